# -*- coding: utf-8 -*-

"""
    Parameter sweeps of the artifact amplitude and the artifact-null
    frequency search.

    A sweep varies one quantity of a fixed Scenario over an evenly spaced
    range (engine units: rad/ps for frequencies, radians for the phase
    difference theta2 - theta1):

    >>> from qoctsim.biphoton import BiphotonSpectrum,CarrierPhase,ModulationSettings
    >>> from qoctsim.engine import Scenario
    >>> from qoctsim.sample import LayerStack
    >>> s = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5,carrier=CarrierPhase.explicit(math.pi))
    >>> mod = ModulationSettings(omega_rf=0.5)
    >>> base = Scenario(s,LayerStack.two_layer(0.6,0.97,6.0),mod,mod,g0_method='closed')
    >>> spec = SweepSpec(VARIABLE.beta_both,0.0,0.5,3,base)
    >>> points = run_sweep(spec)
    >>> [p.x for p in points]
    [0.0, 0.25, 0.5]
    >>> points[0].artifact_amplitude > points[2].artifact_amplitude > 0
    True

    Sweep values are checked against the swept quantity:

    >>> SweepSpec(VARIABLE.frequency_both,0.0,1.0,5,base) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    SweepError: SweepSpec: Attribute 'start' must be positive [0.0]
    >>> SweepSpec(VARIABLE.beta_arm1,1.0,0.5,5,base) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    SweepError: SweepSpec: start must be below stop [1.0,0.5]

    Config files give frequencies in GHz and phase differences in degrees:

    >>> round(VARIABLE_UNITS[VARIABLE.frequency_both].to_engine(12.7),6)
    0.079796
    >>> VARIABLE_UNITS[VARIABLE.phase_difference].from_engine(math.pi)
    180.0

    A bracket whose ends share a sign has no null:

    >>> find_null_frequency(base.replace(mod1=ModulationSettings(beta=0.5),
    ...                                  mod2=ModulationSettings(beta=0.5)),0.1,0.2)
    NO_NULL

"""

import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass,replace

import numpy as np
from scipy import optimize

from qoctsim.bimap import Bimap
from qoctsim.biphoton import CarrierPhase,ghz_to_rad_per_ps,rad_per_ps_to_ghz
from qoctsim.engine import Scenario
from qoctsim.ranges import check_instance,check_int_range,check_nonnegative,check_positive,check_range

class SweepError(Exception):
    pass

class NullSearchError(SweepError):
    pass

VARIABLE = Bimap('VARIABLE',{0:'beta_both',1:'beta_arm1',2:'beta_arm2',
                             3:'frequency_both',4:'phase_difference'},SweepError)

Units = namedtuple('Units','name to_engine from_engine')

_identity = lambda v: float(v)

VARIABLE_UNITS = {
    VARIABLE.beta_both: Units('',_identity,_identity),
    VARIABLE.beta_arm1: Units('',_identity,_identity),
    VARIABLE.beta_arm2: Units('',_identity,_identity),
    VARIABLE.frequency_both: Units('GHz',ghz_to_rad_per_ps,rad_per_ps_to_ghz),
    VARIABLE.phase_difference: Units('deg',math.radians,math.degrees),
}

MAX_BISECT_ITERATIONS = 60
BISECT_XTOL = 1e-12
# |A(null)| must be below this fraction of |A(lo)|
NULL_RESIDUAL = 1e-4

def apply_variable(scenario,variable,value):
    """
        Scenario with the swept quantity set to value (engine units)
    """
    m1,m2 = scenario.mod1,scenario.mod2
    if variable == VARIABLE.beta_both:
        m1,m2 = replace(m1,beta=value),replace(m2,beta=value)
    elif variable == VARIABLE.beta_arm1:
        m1 = replace(m1,beta=value)
    elif variable == VARIABLE.beta_arm2:
        m2 = replace(m2,beta=value)
    elif variable == VARIABLE.frequency_both:
        m1,m2 = replace(m1,omega_rf=value),replace(m2,omega_rf=value)
    elif variable == VARIABLE.phase_difference:
        m2 = replace(m2,theta=m1.theta + value)
    else:
        raise SweepError("Unknown sweep variable: %s" % variable)
    return scenario.replace(mod1=m1,mod2=m2)

def _check_value(name,variable,value):
    if variable in (VARIABLE.beta_both,VARIABLE.beta_arm1,VARIABLE.beta_arm2):
        check_nonnegative(name,value)
    elif variable == VARIABLE.frequency_both:
        check_positive(name,value)
    else:
        check_range(name,value,0.0,2.0 * math.pi)

@dataclass(frozen=True)
class SweepSpec:
    """
        variable over linspace(start,stop,count) with everything else
        taken from scenario
    """
    variable: int
    start: float
    stop: float
    count: int
    scenario: Scenario

    def __post_init__(self):
        object.__setattr__(self,"variable",VARIABLE.parse(self.variable))
        try:
            check_instance("scenario",self.scenario,Scenario)
            check_int_range("count",self.count,2,None)
            _check_value("start",self.variable,self.start)
            _check_value("stop",self.variable,self.stop)
        except ValueError as e:
            raise SweepError("SweepSpec: %s" % e)
        if not self.start < self.stop:
            raise SweepError("SweepSpec: start must be below stop [%s,%s]" % (self.start,self.stop))

    @property
    def units(self):
        return VARIABLE_UNITS[self.variable]

    def values(self):
        return np.linspace(self.start,self.stop,self.count).tolist()

    def at(self,value):
        return apply_variable(self.scenario,self.variable,value)

SweepPoint = namedtuple('SweepPoint','x artifact_amplitude')

def run_sweep(spec,threads=1,logger=None):
    """
        Artifact amplitude at every sweep value, in sweep order
    """
    xs = spec.values()
    def point(x):
        return SweepPoint(x,spec.at(x).artifact_amplitude())
    with ThreadPoolExecutor(max_workers=max(1,threads)) as pool:
        points = []
        for p in pool.map(point,xs):
            points.append(p)
            if logger:
                logger.log_progress("sweep",len(points),len(xs))
    return points

class _NoNull(object):

    __slots__ = ()

    def __repr__(self):
        return "NO_NULL"

    def __bool__(self):
        return False

NO_NULL = _NoNull()

NullResult = namedtuple('NullResult','omega amplitude amplitude_lo iterations bracket')

def _amplitude_at(scenario,omega):
    return apply_variable(scenario,VARIABLE.frequency_both,omega).artifact_amplitude()

def scan_for_brackets(scenario,lo,hi,points):
    """
        All [a,b] intervals of an evenly spaced scan where the artifact
        amplitude changes sign (an exact zero closes an interval)
    """
    check_int_range("points",points,2,None)
    omegas = np.linspace(lo,hi,points).tolist()
    values = [_amplitude_at(scenario,w) for w in omegas]
    brackets = []
    for i in range(points - 1):
        if values[i] == 0:
            brackets.append((omegas[i],omegas[i]))
        elif values[i] * values[i+1] < 0:
            brackets.append((omegas[i],omegas[i+1]))
    if values[-1] == 0:
        brackets.append((omegas[-1],omegas[-1]))
    return brackets

def find_null_frequency(scenario,lo,hi):
    """
        Bisect A(Omega) (Omega1 = Omega2 = Omega, rad/ps) on [lo,hi];
        NO_NULL if the ends share a sign
    """
    check_positive("lo",lo)
    if not hi > lo:
        raise SweepError("find_null_frequency: empty bracket [%s,%s]" % (lo,hi))
    a_lo = _amplitude_at(scenario,lo)
    if a_lo == 0:
        return NullResult(lo,0.0,0.0,0,(lo,hi))
    a_hi = _amplitude_at(scenario,hi)
    if a_hi == 0:
        return NullResult(hi,0.0,a_lo,0,(lo,hi))
    if a_lo * a_hi > 0:
        return NO_NULL
    omega,info = optimize.bisect(lambda w: _amplitude_at(scenario,w),lo,hi,
                                 xtol=BISECT_XTOL,maxiter=MAX_BISECT_ITERATIONS,
                                 full_output=True,disp=False)
    a = _amplitude_at(scenario,omega)
    if not info.converged or abs(a) >= NULL_RESIDUAL * abs(a_lo):
        raise NullSearchError("find_null_frequency: no convergence after %d iterations "
                              "[Omega=%.12g A=%.3g]" % (info.iterations,omega,a))
    return NullResult(omega,a,a_lo,info.iterations,(lo,hi))

def locate_null(scenario,lo,hi,scan_points=0,near=None):
    """
        find_null_frequency on [lo,hi]; if the ends share a sign and
        scan_points > 0, on the scanned sign-change interval that is
        first (or closest to 'near')
    """
    result = find_null_frequency(scenario,lo,hi)
    if result is not NO_NULL and near is None:
        return result
    if scan_points < 2:
        return result
    brackets = scan_for_brackets(scenario,lo,hi,scan_points)
    if not brackets:
        return NO_NULL
    if near is not None:
        brackets.sort(key=lambda b: abs((b[0] + b[1]) / 2.0 - near))
    a,b = brackets[0]
    if a == b:
        return NullResult(a,0.0,_amplitude_at(scenario,lo),0,(a,b))
    return find_null_frequency(scenario,a,b)

def carrier_phase_of(scenario):
    """
        Effective carrier phase between the outermost layers
    """
    phases = scenario.spectrum.layer_phases(scenario.stack.delays)
    return phases[-1] - phases[0]

NullSensitivity = namedtuple('NullSensitivity','delta minus plus derivative')

def null_sensitivity(scenario,lo,hi,omega,delta=0.2,scan_points=0):
    """
        dOmega*/dphi_c by central difference at phi_c +- delta, tracking
        the null closest to omega (derivative None if either side has
        no null)
    """
    check_positive("delta",delta)
    phi = carrier_phase_of(scenario)
    found = []
    for sign in (-1,1):
        s = scenario.spectrum.with_carrier(CarrierPhase.explicit(phi + sign * delta))
        found.append(locate_null(scenario.replace(spectrum=s),lo,hi,scan_points,near=omega))
    minus,plus = found
    if minus is NO_NULL or plus is NO_NULL:
        return NullSensitivity(delta,minus,plus,None)
    return NullSensitivity(delta,minus,plus,(plus.omega - minus.omega) / (2.0 * delta))

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
