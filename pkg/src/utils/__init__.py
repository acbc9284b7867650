"""Logging, errors and file utilities"""
