"""Exception types shared across the package."""


class NetspreadError(Exception):
    """Base class for all netspread errors."""


# --- model validation ---

class UnknownState(NetspreadError):
    pass


class NonPositiveRate(NetspreadError):
    pass


class SelfTransition(NetspreadError):
    pass


class DuplicateRule(NetspreadError):
    pass


# --- network construction / mutation ---

class MalformedLine(NetspreadError):
    pass


class SelfLoop(NetspreadError):
    pass


class NonPositiveWeight(NetspreadError):
    pass


class AsymmetricWeight(NetspreadError):
    pass


class DegenerateParameters(NetspreadError):
    pass


class SlotOutOfRange(NetspreadError):
    pass


class IsolatedNode(NetspreadError):
    pass


class EdgeExists(NetspreadError):
    pass


class EdgeAbsent(NetspreadError):
    pass


# --- randomness ---

class ZeroRange(NetspreadError):
    pass


class ProbabilityOutOfRange(NetspreadError):
    pass


class ScriptExhausted(NetspreadError):
    pass


# --- event queue ---

class TimeInPast(NetspreadError):
    pass


# --- engines ---

class ModelNotRejectionSimulable(NetspreadError):
    pass


class BadInitialAssignment(NetspreadError):
    pass


class OutOfOrderStream(NetspreadError):
    pass


class CorruptState(NetspreadError):
    """Internal consistency violation; indicates a bug, not bad input."""


class OgaRequiresSis(NetspreadError):
    pass


# --- exact oracle ---

class StateSpaceTooLarge(NetspreadError):
    pass
