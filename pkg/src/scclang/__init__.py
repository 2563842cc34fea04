"""scclang: design language, compiler and runtime for Sense/Compute/Control
applications, with a bundled 2D robot simulator case study."""

__version__ = "0.1.0"
