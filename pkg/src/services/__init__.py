"""Algorithms and orchestration services"""
