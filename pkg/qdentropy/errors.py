"""
exceptions for the qdentropy project

the library raises these and never exits; qdentropy.cli maps them to exit codes.
"""


class EntropyError(Exception):
    """ base class of all qdentropy errors """


###############################################################################
# input and configuration
###############################################################################

class DomainError(EntropyError, ValueError):
    """ argument outside the domain of an operation """


class DataError(EntropyError, ValueError):
    """ unusable input data (too few values, unparseable line) """


class DegenerateSample(DataError):
    """ sample with zero variance """


class ConfigError(EntropyError, ValueError):
    """ invalid tuning parameters """


class InvalidWindow(ConfigError):
    """ spacing window m outside 1 <= m <= n/2 """


class MissingCalibration(EntropyError, KeyError):
    """ no critical value calibrated for the requested (n, alpha) """

    def __str__(self):
        # KeyError quotes its argument, we want the plain message
        return str(self.args[0]) if self.args else ''


###############################################################################
# numerical failures
###############################################################################

class NumericalError(EntropyError, ArithmeticError):
    """ an estimator could not produce a finite value """


class DegenerateSpacings(NumericalError):
    """ a logarithm argument built from spacings is not strictly positive """


class NonPositiveQdf(NumericalError):
    """ the kernel quantile density estimate is <= 0 at some t """

    def __init__(self, t, value):
        self.t = float(t)
        self.value = float(value)
        super().__init__('quantile density estimate %.6g <= 0 at t=%.6g' % (self.value, self.t))


class QuadratureNotConverged(NumericalError):
    """ Simpson refinement hit the node budget above tolerance """

    def __init__(self, delta, nb_nodes, tol):
        self.delta = float(delta)
        self.nb_nodes = int(nb_nodes)
        self.tol = float(tol)
        super().__init__('quadrature change %.3g > tolerance %.3g at %d nodes'
                         % (self.delta, self.tol, self.nb_nodes))


class MalformedCdf(NumericalError):
    """ the piecewise-linear cdf estimate is not monotone on the data """


class SingularCurvature(NumericalError):
    """ second derivative of the qdf vanishes, AMSE bandwidth undefined """
