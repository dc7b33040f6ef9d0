"""Exception hierarchy shared across the package.

Every error raised on a documented contract violation derives from
GlassboxError so callers (CLI, HTTP service) can map failures to
categorized exit codes / status codes.
"""


class GlassboxError(Exception):
    """Base class for all package errors."""

    category = "internal"


class ValidationError(GlassboxError):
    """Malformed input: bad schema, bad file, out-of-range argument."""

    category = "validation"


class IncompatibleError(GlassboxError):
    """Model / sample / method combinations that cannot be evaluated."""

    category = "incompatible"


class NotFoundError(GlassboxError):
    """Missing model id, scenario id, or file."""

    category = "not_found"


class RankDeficientError(GlassboxError):
    """Normal equations singular after regularization."""

    category = "rank_deficient"


class ConstantScoresError(GlassboxError):
    """Rank-based metric asked to correlate a constant score vector."""

    category = "constant_scores"
