class MacroStateException(Exception):
    pass


class InvalidDistributionException(MacroStateException, ValueError):
    pass


class InvalidTrajectoryException(MacroStateException, ValueError):
    pass
