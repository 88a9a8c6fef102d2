"""Exception hierarchy shared by all bsstar modules."""


class BSStarError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(BSStarError, ValueError):
    """Dimension outside the supported range, or mismatched between operands."""


class VertexRangeError(BSStarError, IndexError):
    """Rank, position or rotation amount outside its valid range."""


class ParityError(BSStarError, ValueError):
    """A vertex has the wrong parity for the requested construction."""


class ResourceError(BSStarError, MemoryError):
    """The requested structure would exceed a configured size or memory cap."""


class ParseError(BSStarError, ValueError):
    """Malformed permutation string, edge list or certificate document."""
