"""
Exceptions raised across the library
"""

__all__ = ['SyncModelError', 'DimensionMismatch', 'NonPlanarInput', 'NonUnimodularInput', 'StepFailure',
           'InsufficientData', 'ZeroCoupling', 'NoSolution', 'DegenerateDenominator', 'SameIndex',
           'ImaginaryRate', 'ConfigError']


class SyncModelError(Exception):
    """
    Base class for every error raised by syncmodel
    """
    pass


class DimensionMismatch(SyncModelError, ValueError):
    pass


class NonPlanarInput(SyncModelError, ValueError):
    """
    Spin configuration has no planar angle representation, use the 3D pipeline instead
    """
    pass


class NonUnimodularInput(SyncModelError, ValueError):
    pass


class StepFailure(SyncModelError, RuntimeError):
    """
    Adaptive integrator could not complete a step (step size underflow, usually stiffness or bad params)
    """
    pass


class InsufficientData(SyncModelError, ValueError):
    pass


class ZeroCoupling(SyncModelError, ValueError):
    pass


class NoSolution(SyncModelError, ArithmeticError):
    """
    Self-consistency equation has no root in its feasible interval
    """
    pass


class DegenerateDenominator(SyncModelError, ArithmeticError):
    pass


class SameIndex(SyncModelError, ValueError):
    pass


class ImaginaryRate(SyncModelError, ArithmeticError):
    """
    Relaxation rate would be imaginary, there is no locked equilibrium
    """
    pass


class ConfigError(SyncModelError, ValueError):
    """
    Invalid experiment configuration
    :param field: dotted path of the offending config field
    :param message: what is wrong with it
    """
    def __init__(self, field, message):
        self.field = field
        super().__init__('{f}: {m}'.format(f=field, m=message))
