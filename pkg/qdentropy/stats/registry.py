"""
estimator ids and their text specs

a spec string is "name[:key=value,...]", for example

    vasicek:m=3
    wg:m=4
    ebrahimi:m=4,symmetric=true
    kernel:h=0.0333,eps=0.01,kernel=gaussian
    parzen-star:h=0.05,null=normal
    parzen-tilde:eps=0.01,first_cell=clamp
"""

# internal python imports
from dataclasses import dataclass, field
from typing import Any

# local (our) imports
from . import spacings, qdf, parzen
from ..errors import ConfigError


SPACING_ESTIMATORS = {
    'vasicek': spacings.vasicek,
    'vanes': spacings.van_es,
    'correa': spacings.correa,
    'wg': spacings.wieczorkowski,
    'ebrahimi': spacings.ebrahimi,
    'yousefzadeh': spacings.yousefzadeh,
}

KERNEL_ESTIMATORS = ('kernel', 'parzen-star')

ESTIMATOR_IDS = tuple(SPACING_ESTIMATORS) + KERNEL_ESTIMATORS + ('parzen-tilde',)

# spec keys accepted by each family, with their parsers
_SPACING_KEYS = {'m': int, 'short_range': 'bool', 'symmetric': 'bool', 'strict': 'bool'}
_KERNEL_KEYS = {'h': float, 'eps': float, 'kernel': str, 'null': str}
_TILDE_KEYS = {'eps': float, 'first_cell': str, 'null': str}

_FLAG_FIELDS = {
    'short_range': 'correa_short_range',
    'symmetric': 'ebrahimi_symmetric',
    'strict': 'yousefzadeh_strict',
}


def _parse_bool(text):
    low = str(text).strip().lower()
    if low in ('1', 'true', 'yes', 'on'):
        return True
    if low in ('0', 'false', 'no', 'off'):
        return False
    raise ConfigError('expected a boolean, got "%s"' % text)


def _format_float(value):
    """ shortest text that parses back to the same float """
    return repr(float(value))


def _parse_value(key, text, parsers):
    parser = parsers[key]
    try:
        return _parse_bool(text) if parser == 'bool' else parser(text)
    except ValueError:
        raise ConfigError('could not parse %s=%s' % (key, text))


@dataclass(frozen=True)
class EstimatorSpec:
    """
    an estimator id with its tuning

    Parameters:
        estimator: one of ESTIMATOR_IDS
        tuning: SpacingConfig for spacing estimators, KernelConfig for 'kernel' and
            'parzen-star', None for 'parzen-tilde'
        options: extra keywords ('null', 'eps', 'first_cell' for the parzen estimators)
        label: display name in tables (defaults to the spec string)
    """
    estimator: str
    tuning: Any = None
    options: dict = field(default_factory=dict)
    label: str = None

    def __post_init__(self):
        if self.estimator not in ESTIMATOR_IDS:
            raise ConfigError('unknown estimator "%s", expected one of %s'
                              % (self.estimator, list(ESTIMATOR_IDS)))
        if self.estimator in SPACING_ESTIMATORS:
            if not isinstance(self.tuning, spacings.SpacingConfig):
                raise ConfigError('%s needs a window m' % self.estimator)
        elif self.estimator in KERNEL_ESTIMATORS:
            if not isinstance(self.tuning, qdf.KernelConfig):
                raise ConfigError('%s needs a bandwidth h' % self.estimator)
        if self.label is None:
            object.__setattr__(self, 'label', str(self))

    # --- text form -----------------------------------------------------------

    @classmethod
    def parse(cls, text, label=None):
        """ build a spec from "name[:key=value,...]" """
        if isinstance(text, EstimatorSpec):
            return text
        name, _, rest = str(text).strip().partition(':')
        name = name.strip().lower()
        if name not in ESTIMATOR_IDS:
            raise ConfigError('unknown estimator "%s", expected one of %s'
                              % (name, list(ESTIMATOR_IDS)))

        if name in SPACING_ESTIMATORS:
            parsers = _SPACING_KEYS
        elif name in KERNEL_ESTIMATORS:
            parsers = _KERNEL_KEYS
        else:
            parsers = _TILDE_KEYS

        kwargs = {}
        for item in filter(None, (s.strip() for s in rest.split(','))):
            key, sep, value = item.partition('=')
            key = key.strip()
            if not sep or key not in parsers:
                raise ConfigError('bad option "%s" for %s, expected key=value with key in %s'
                                  % (item, name, sorted(parsers)))
            kwargs[key] = _parse_value(key, value.strip(), parsers)

        return cls.build(name, label=label, **kwargs)

    @classmethod
    def build(cls, name, label=None, **kwargs):
        """ build a spec from keyword tuning (m=..., h=..., eps=..., ...) """
        options = {}
        if name in SPACING_ESTIMATORS:
            if 'm' not in kwargs:
                raise ConfigError('%s needs a window m' % name)
            flags = {_FLAG_FIELDS[k]: v for k, v in kwargs.items() if k in _FLAG_FIELDS}
            tuning = spacings.SpacingConfig(kwargs['m'], **flags)
        elif name in KERNEL_ESTIMATORS:
            if 'h' not in kwargs:
                raise ConfigError('%s needs a bandwidth h' % name)
            cfg = dict(h=kwargs['h'])
            for key in ('eps', 'kernel'):
                if key in kwargs:
                    cfg[key] = kwargs[key]
            tuning = qdf.KernelConfig(**cfg)
            if name == 'parzen-star':
                options['null'] = kwargs.get('null', 'normal')
        else:
            tuning = None
            options = dict(null=kwargs.get('null', 'normal'),
                           eps=kwargs.get('eps', 0.01),
                           first_cell=kwargs.get('first_cell', 'clamp'))
        return cls(name, tuning, options, label)

    def __str__(self):
        items = []
        if isinstance(self.tuning, spacings.SpacingConfig):
            items.append('m=%d' % self.tuning.m)
            for short, long in _FLAG_FIELDS.items():
                if getattr(self.tuning, long):
                    items.append('%s=true' % short)
        elif isinstance(self.tuning, qdf.KernelConfig):
            items.append('h=%s' % _format_float(self.tuning.h))
            items.append('eps=%s' % _format_float(self.tuning.eps))
            if self.tuning.kernel != 'gaussian':
                items.append('kernel=%s' % self.tuning.kernel)
        for key, value in sorted(self.options.items()):
            if isinstance(value, float):
                value = _format_float(value)
            items.append('%s=%s' % (key, value))
        return self.estimator + (':' + ','.join(items) if items else '')

    # --- use -----------------------------------------------------------------

    def with_bandwidth(self, h):
        """ the same spec with another bandwidth (kernel based estimators only) """
        if self.estimator not in KERNEL_ESTIMATORS:
            raise ConfigError('%s has no bandwidth' % self.estimator)
        return EstimatorSpec(self.estimator, self.tuning.replace(h=h), dict(self.options))

    def check(self, n):
        """ raise if this tuning cannot be applied to samples of size n """
        if isinstance(self.tuning, spacings.SpacingConfig):
            self.tuning.check(n)
        if self.estimator == 'yousefzadeh' and n < 4:
            raise ConfigError('yousefzadeh needs n >= 4, got %d' % n)

    def evaluate(self, x):
        """ EntropyEstimate of sample x """
        if self.estimator in SPACING_ESTIMATORS:
            return SPACING_ESTIMATORS[self.estimator](x, self.tuning)
        if self.estimator == 'kernel':
            return qdf.entropy_hat(x, self.tuning)
        if self.estimator == 'parzen-star':
            return parzen.parzen_entropy_star(x, self.options['null'], self.tuning)
        return parzen.parzen_entropy_tilde(x, self.options['null'], eps=self.options['eps'],
                                           first_cell=self.options['first_cell'])

    def __call__(self, x):
        return self.evaluate(x)


def parse_estimator(text, label=None):
    """ EstimatorSpec from its text form (specs pass through) """
    return EstimatorSpec.parse(text, label=label)
