from typing import Optional


class ExperimentException(Exception):
    pass


class ConfigurationException(ExperimentException, ValueError):
    def __init__(self, message: str, key: Optional[str] = None):
        super().__init__(f"{key}: {message}" if key else message)
        self.key = key


class OutputException(ExperimentException):
    def __init__(self, path: str, reason: str):
        super().__init__(f"Failed to write {path}: {reason}")
        self.path = path
