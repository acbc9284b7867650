"""GBF-PUM graph signal interpolation toolkit"""
__version__ = "1.0.0"
