"""Glued Landau-Ginzburg mirrors of punctured Riemann surfaces.

Exact computer algebra over the Novikov field: tropical curves, chart
transitions, curated A-infinity local models, matrix factorizations,
homotopy fiber products, and the verification CLI.
"""

__version__ = "0.1.0"
