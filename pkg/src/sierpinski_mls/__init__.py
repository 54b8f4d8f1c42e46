"""Growing Sierpinski networks, their statistics and maximum-leaf spanning trees."""

__version__ = "0.1.0"
