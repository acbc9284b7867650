"""Published reconstruction results on road networks, for side-by-side printing"""

REFERENCE_COLUMNS = ("samples", "communities", "rmae", "rrmse", "time_s")

# Minnesota road network: 2642 vertices, 3304 edges
MINNESOTA = (
    (400, 11, 3.509e-01, 3.208681e-02, 1.425e+02),
    (800, 9, 9.276e-02, 5.880306e-03, 1.879e+02),
    (1200, 11, 1.977e-02, 1.444769e-03, 1.587e+02),
    (1600, 10, 1.517e-02, 6.787503e-04, 1.586e+02),
    (2000, 9, 5.078e-03, 2.122356e-04, 1.690e+02),
)

# Brussels freight transport network: 4540 vertices, 14946 edges, 3451 measured
BRUSSELS = (
    (400, 15, 1.500e+01, 6.881386e-02, 2.767e+02),
    (800, 7, 9.173e-01, 6.087108e-02, 2.752e+02),
    (1200, 15, 8.015e-01, 4.673573e-02, 2.768e+02),
    (1600, 9, 6.286e-01, 3.925505e-02, 2.253e+02),
    (2000, 17, 5.845e-01, 3.011343e-02, 2.168e+02),
    (2400, 16, 6.538e-01, 2.435230e-02, 2.166e+02),
    (2800, 12, 3.589e-01, 1.770847e-02, 1.974e+02),
    (3200, 6, 1.732e-01, 7.304001e-03, 1.629e+02),
)

REFERENCE_TABLES = {"minnesota": MINNESOTA, "brussels": BRUSSELS}


def reference_rows(name: str):
    """Rows of a published table as dicts keyed by REFERENCE_COLUMNS"""
    if name not in REFERENCE_TABLES:
        raise ValueError(f"Unknown reference table '{name}' (choose from {', '.join(REFERENCE_TABLES)})")
    return [dict(zip(REFERENCE_COLUMNS, row)) for row in REFERENCE_TABLES[name]]
