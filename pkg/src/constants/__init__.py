"""Bundled benchmark data"""
