#!/usr/bin/env python3
"""
GBF-PUM - Main Entry Point

Graph signal interpolation: communities detected around the sample vertices
serve as partition-of-unity subdomains for local graph basis function fits.
"""

if __name__ == "__main__":
    import sys
    from src.main import main
    sys.exit(main())
