"""safesple: airspace-entry decisions backed by feature models and safety-case instances."""

__version__ = "0.1.0"
