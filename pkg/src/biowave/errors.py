"""Exception types raised by the library.

Every data- or parameter-level failure derives from :class:`ProcessingError`
so batch drivers can catch one base class; configuration-file problems use
:class:`ConfigError` (the CLI maps them to different exit codes).
"""


class ProcessingError(ValueError):
    """Base class for invalid data or parameters."""


class ConfigError(ValueError):
    """Malformed or inconsistent pipeline configuration."""


class NonNumericCell(ProcessingError):
    def __init__(self, row: int, col: int, value: str):
        super().__init__(f"non-numeric cell at row {row}, column {col}: {value!r}")
        self.row = row
        self.col = col
        self.value = value


class EmptyRow(ProcessingError):
    pass


class DegenerateRange(ProcessingError):
    pass


class WindowTooLong(ProcessingError):
    pass


class TooShort(ProcessingError):
    pass


class InvalidFrequency(ProcessingError):
    pass


class UnknownWavelet(ProcessingError):
    pass


class NonPositiveScale(ProcessingError):
    pass


class LevelOutOfRange(ProcessingError):
    pass


class ShapeMismatch(ProcessingError):
    pass


class EmptyCoefficients(ProcessingError):
    pass


class NegativeThreshold(ProcessingError):
    pass


class LengthMismatch(ProcessingError):
    pass


class IdenticalSignals(ProcessingError):
    pass


class InsufficientLevels(ProcessingError):
    pass


class EmptySpace(ProcessingError):
    pass


class WrongKind(ProcessingError):
    pass


class EmptyScales(ProcessingError):
    pass


class NotNormalized(ProcessingError):
    pass


class NonPositiveEpsilon(ProcessingError):
    pass


class TooFewSamples(ProcessingError):
    pass


class DegenerateData(ProcessingError):
    pass


class NonSquareChannel(ProcessingError):
    pass


class SamplingTooLow(ProcessingError):
    pass


class TooFewPeaks(ProcessingError):
    pass


class KTooLarge(ProcessingError):
    pass


class DimensionMismatch(ProcessingError):
    pass


class EmptyInput(ProcessingError):
    pass
