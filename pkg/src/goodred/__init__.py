"""Good d census, Setzer field counts and the associated density constants."""

__version__ = "0.1.0"
