# -*- coding: utf-8 -*-

"""
    Fitting the artifact-amplitude model to measured visibility curves.

    The model for an observation at sweep value x is

        y(x) = baseline_offset + amplitude_scale * A(x; carrier_phase, beta_scale)

    where A is the engine's artifact amplitude with every modulation
    index multiplied by beta_scale. The weighted sum of squared residuals
    is minimised with a bounded Nelder-Mead simplex, restarted from
    seeded carrier phases when carrier_phase is free.

    >>> obs = [Observation(0.0,1.0),Observation(1.0,2.0)]
    >>> FitProblem(obs) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    FitError: FitProblem: at least 3 observations required [2]
    >>> p = FitProblem(obs + [Observation(0.5,1.5,2.0)],free=['amplitude_scale'])
    >>> [o.x for o in p.observations]
    [0.0, 0.5, 1.0]
    >>> p.bounds['amplitude_scale']
    (0.0, 10.0)
    >>> FitProblem(obs + [Observation(0.5,1.5)],free=['gain']) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    FitError: FitProblem: unknown parameter 'gain' (expected one of amplitude_scale,baseline_offset,carrier_phase,beta_scale)

"""

import csv
import math
from collections import namedtuple
from dataclasses import dataclass,field,replace
from functools import lru_cache

import numpy as np
from scipy import optimize

from qoctsim.ranges import check_finite,check_int_range,check_nonnegative
from qoctsim.sweeps import apply_variable,carrier_phase_of

class FitError(Exception):
    pass

PARAMETERS = ('amplitude_scale','baseline_offset','carrier_phase','beta_scale')
DEFAULT_FREE = ('amplitude_scale','carrier_phase')
DEFAULT_BOUNDS = {
    'amplitude_scale': (0.0,10.0),
    'baseline_offset': (-1.0,1.0),
    'carrier_phase': (0.0,2.0 * math.pi),
    'beta_scale': (0.0,2.0),
}
DEFAULT_STARTS = 8
DEFAULT_MAX_ITER = 2000
# Initial simplex edge as a fraction of each bound width
SIMPLEX_STEP = 0.05

Observation = namedtuple('Observation','x y weight')
Observation.__new__.__defaults__ = (1.0,)

@dataclass(frozen=True)
class FitProblem:
    """
        Observations (sorted, so the objective ignores input order), the
        free parameters and their bounds, and optional initial values
        (others default from the scenario)
    """
    observations: tuple
    free: tuple = DEFAULT_FREE
    bounds: dict = field(default_factory=dict)
    initial: dict = field(default_factory=dict)

    def __post_init__(self):
        obs = []
        for i,o in enumerate(self.observations):
            o = Observation(*o)
            try:
                check_finite("x",o.x)
                check_finite("y",o.y)
                check_nonnegative("weight",o.weight)
            except ValueError as e:
                raise FitError("FitProblem: observations[%d]: %s" % (i,e))
            obs.append(Observation(float(o.x),float(o.y),float(o.weight)))
        if len(obs) < 3:
            raise FitError("FitProblem: at least 3 observations required [%d]" % len(obs))
        object.__setattr__(self,"observations",tuple(sorted(obs)))
        free = tuple(self.free)
        if not free:
            raise FitError("FitProblem: no free parameters")
        for name in free + tuple(self.bounds) + tuple(self.initial):
            if name not in PARAMETERS:
                raise FitError("FitProblem: unknown parameter '%s' (expected one of %s)" %
                                    (name,",".join(PARAMETERS)))
        if len(set(free)) != len(free):
            raise FitError("FitProblem: duplicate free parameters")
        object.__setattr__(self,"free",free)
        bounds = dict(DEFAULT_BOUNDS)
        for name,b in self.bounds.items():
            lo,hi = (float(v) for v in b)
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise FitError("FitProblem: invalid bounds for %s [%s,%s]" % (name,lo,hi))
            bounds[name] = (lo,hi)
        object.__setattr__(self,"bounds",bounds)

    @property
    def x(self):
        return np.array([o.x for o in self.observations])

    @property
    def y(self):
        return np.array([o.y for o in self.observations])

    @property
    def weights(self):
        return np.array([o.weight for o in self.observations])

FitResult = namedtuple('FitResult','parameters residual_norm iterations converged starts')

class _Model(object):

    """
        A(x) for every observation; the carrier phase enters in O(1)
        through the engine's carrier decomposition, which is computed
        once per beta_scale
    """

    def __init__(self,spec,xs):
        self.spec = spec
        self.xs = tuple(xs)
        self.responses = lru_cache(maxsize=64)(self._responses)

    def _scenario(self,x,beta_scale):
        scenario = apply_variable(self.spec.scenario,self.spec.variable,x)
        if beta_scale != 1.0:
            scenario = scenario.replace(
                mod1=_scaled(scenario.mod1,beta_scale),
                mod2=_scaled(scenario.mod2,beta_scale))
        return scenario

    def _responses(self,beta_scale):
        return [self._scenario(x,beta_scale).carrier_response() for x in self.xs]

    def amplitudes(self,phi,beta_scale):
        return np.array([r.amplitude(phi) for r in self.responses(beta_scale)])

def _scaled(mod,scale):
    return replace(mod,beta=mod.beta * scale)

def _simplex(x0,lower,upper):
    width = upper - lower
    vertices = [x0]
    for i in range(len(x0)):
        v = x0.copy()
        step = SIMPLEX_STEP * width[i]
        v[i] = v[i] + step if v[i] + step <= upper[i] else v[i] - step
        vertices.append(v)
    return np.array(vertices)

def fit(problem,spec,starts=DEFAULT_STARTS,seed=0,max_iter=DEFAULT_MAX_ITER,logger=None):
    """
        Best parameters over all starts as a FitResult; parameters that
        are not free keep their initial values
    """
    if len(spec.scenario.stack) != 2:
        raise FitError("fit: artifact model needs a two-layer stack [%d layers]" %
                            len(spec.scenario.stack))
    check_int_range("starts",starts,1,None)
    check_int_range("max_iter",max_iter,1,None)
    initial = {'amplitude_scale':1.0,'baseline_offset':0.0,'beta_scale':1.0,
               'carrier_phase':carrier_phase_of(spec.scenario)}
    initial.update({k:float(v) for k,v in problem.initial.items()})
    free = problem.free
    lower = np.array([problem.bounds[n][0] for n in free])
    upper = np.array([problem.bounds[n][1] for n in free])
    x0 = np.clip(np.array([initial[n] for n in free]),lower,upper)
    model = _Model(spec,problem.x)
    y,w = problem.y,problem.weights

    def params(v):
        p = dict(initial)
        p.update(zip(free,(float(t) for t in v)))
        return p

    def objective(v):
        p = params(v)
        a = model.amplitudes(p['carrier_phase'],p['beta_scale'])
        r = p['baseline_offset'] + p['amplitude_scale'] * a - y
        return math.fsum(w * r * r)

    rng = np.random.default_rng(seed)
    guesses = [x0]
    if 'carrier_phase' in free and starts > 1:
        i = free.index('carrier_phase')
        for phi in rng.uniform(lower[i],upper[i],starts - 1):
            g = x0.copy()
            g[i] = phi
            guesses.append(g)

    best = None
    for n,guess in enumerate(guesses):
        trace = []
        def monotone(xk):
            f = objective(xk)
            if trace and f > trace[-1] * (1 + 1e-12) + 1e-300:
                raise FitError("fit: objective increased [%.12g -> %.12g]" % (trace[-1],f))
            trace.append(f)
        result = optimize.minimize(objective,guess,method='Nelder-Mead',
                                   bounds=list(zip(lower,upper)),callback=monotone,
                                   options={'initial_simplex':_simplex(guess,lower,upper),
                                            'maxiter':max_iter,'xatol':1e-10,'fatol':1e-16})
        if logger:
            logger.log_progress("fit",n + 1,len(guesses))
        if best is None or result.fun < best.fun:
            best = result
    return FitResult(params(best.x),math.sqrt(best.fun),int(best.nit),
                     bool(best.success),len(guesses))

def read_observations(path):
    """
        Observations from a CSV file with header x,y[,weight]
    """
    with open(path,newline='') as f:
        reader = csv.DictReader(f)
        fields = reader.fieldnames or []
        if fields[:2] != ['x','y'] or fields[2:] not in ([],['weight']):
            raise FitError("%s: expected header x,y[,weight] [%s]" % (path,",".join(fields)))
        obs = []
        for n,row in enumerate(reader,2):
            try:
                obs.append(Observation(float(row['x']),float(row['y']),
                                       float(row.get('weight') or 1.0)))
            except (TypeError,ValueError) as e:
                raise FitError("%s:%d: %s" % (path,n,e))
    return obs

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
