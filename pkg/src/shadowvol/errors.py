"""Exception hierarchy shared by the pipeline stages."""


class ShadowVolError(Exception):
    """Base class; ``stage`` names the pipeline stage that failed."""

    stage = "pipeline"


class DiagramError(ShadowVolError):
    stage = "parse"


class ArcColoringError(ShadowVolError):
    """The arc colors do not satisfy the crossing relations."""

    stage = "arc_coloring"

    def __init__(self, message, crossing=None, residual=None):
        super().__init__(message)
        self.crossing = crossing
        self.residual = residual


class ColoringSearchError(ShadowVolError):
    stage = "coloring"


class DegenerateConfigurationError(ShadowVolError):
    stage = "nondegeneracy"


class SingularPointError(ShadowVolError):
    """A dilogarithm or log argument hit a singular value."""

    stage = "potential"


class PipelineCheckError(ShadowVolError):
    def __init__(self, stage, message):
        super().__init__(message)
        self.stage = stage
