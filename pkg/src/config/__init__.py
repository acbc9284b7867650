"""Configuration module for the GBF-PUM toolkit"""
