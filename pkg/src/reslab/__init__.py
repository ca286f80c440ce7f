"""Local-resilience experiments on random graphs."""

__version__ = "0.1.0"

from .graph import Graph, GraphError  # noqa: E402

__all__ = ["Graph", "GraphError", "__version__"]
