"""Side disks of convex polygons: exact construction, planarity checks and
executable verifiers for the supporting lemmas."""

__version__ = "0.1.0"
