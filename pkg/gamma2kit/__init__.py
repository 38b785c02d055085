__all__ = [
    "catalog",
    "cli",
    "config",
    "errors",
    "gl2",
    "homology",
    "linalg",
    "models",
    "parser",
    "representation",
    "service",
    "words",
]
