class ConfigurationError(ValueError):
    """Raised when a scenario or parameter set is unusable as configured."""
