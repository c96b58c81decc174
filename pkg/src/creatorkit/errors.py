"""Shared exception types.

Every error carries an ``error_code`` string so the HTTP layer can map it
to a ``{error_code, message}`` payload without inspecting the type.
"""


class CreatorKitError(Exception):
    error_code = "internal"


class EmptyInput(CreatorKitError):
    error_code = "empty_input"


class EmptyTitle(EmptyInput):
    error_code = "empty_title"


class EmptyVideo(EmptyInput):
    error_code = "empty_video"


class EmptyDataset(CreatorKitError):
    error_code = "empty_dataset"


class EmptyGroup(CreatorKitError):
    error_code = "empty_group"


class ShapeError(CreatorKitError):
    error_code = "shape_error"


class NumericalError(CreatorKitError):
    error_code = "numerical_error"


class ConfigError(CreatorKitError):
    error_code = "config_error"


class FormatError(CreatorKitError):
    error_code = "format_error"


class MissingChannelStats(CreatorKitError):
    error_code = "missing_channel_stats"


class DegenerateCategory(CreatorKitError):
    error_code = "degenerate_category"


class DegenerateBaseline(CreatorKitError):
    error_code = "degenerate_baseline"


class NoVideos(CreatorKitError):
    error_code = "no_videos"
