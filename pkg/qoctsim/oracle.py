# -*- coding: utf-8 -*-

"""
    Brute-force coincidence oracle.

    Evaluates the coincidence integral directly on a uniform detuning grid

        C(tau) = int int | f(nu1,nu2) H(nu2)
                           - f(nu2,nu1) H(nu1) exp(i(nu2 - nu1)tau) |^2

    and its split C = G0 - G into the self-interference term

        G0 = int int |f(nu1,nu2) H(nu2)|^2 + |f(nu2,nu1) H(nu1)|^2

    and the cross term G(tau). No Gaussian overlap is done analytically,
    so the result is an independent check on the closed-form engine.
    Every value is computed on the grid and on its refinement; the two
    must agree to 0.1% of G0.

    A single mirror gives a perfect dip at tau = 0:

    >>> from qoctsim.biphoton import BiphotonSpectrum,ModulationSettings
    >>> from qoctsim.sample import LayerStack
    >>> s = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5)
    >>> off = ModulationSettings()
    >>> r = c_tau_oracle(s,off,off,LayerStack.single(),0.0)
    >>> abs(r.c) < 1e-12, abs(r.g0 - 2.0) < 1e-6
    (True, True)

    Grids too coarse for the requested delay are refused:

    >>> from qoctsim.quadrature import QuadratureGrid
    >>> c_tau_oracle(s,off,off,LayerStack.single(),40.0,
    ...              QuadratureGrid(points_per_axis=65)) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    OracleResolutionError: c_tau_oracle: grid step 0.3125 exceeds resolution limit 0.019635

    Swapping the arms of the network transposes the JSA:

    >>> m1 = ModulationSettings(beta=1.2,omega_rf=0.5)
    >>> m2 = ModulationSettings(beta=0.4,omega_rf=0.7,theta=1.0)
    >>> swap_consistency_check(s,m1,m2,[(0.1,-0.3),(1.5,0.2),(-2.0,-2.5)]) < 1e-12
    True

"""

from collections import namedtuple

import numpy as np

from qoctsim.biphoton import build_sideband_network,jsa_pm
from qoctsim.engine import Interferogram,MODE,QuadratureConvergenceError,check_tau_grid
from qoctsim.quadrature import (QuadratureGrid,ResolutionError,WEIGHT_FLOOR,
                                CONVERGENCE_TOLERANCE,integrate_2d,refine,step_limit)
from qoctsim.sample import transfer
from qoctsim.specfun import DEFAULT_EPSILON

class OracleError(Exception):
    pass

class OracleResolutionError(OracleError):
    pass

# C is a squared modulus integrated with positive weights
POSITIVITY_FLOOR = -1e-12

OracleResult = namedtuple('OracleResult','c g0 g')

class _Field(object):

    """
        JSA and sample response sampled once on a detuning axis; the
        delay-dependent phase is applied per tau
    """

    def __init__(self,spectrum,network,stack,axis,scheme):
        self.axis = axis
        self.scheme = scheme
        f = jsa_pm(spectrum,network,axis[:,None],axis[None,:],floor=WEIGHT_FLOOR)
        h = transfer(stack,axis,spectrum.layer_phases(stack.delays))
        # a = f(nu1,nu2) H(nu2), b0 = f(nu2,nu1) H(nu1)
        self.a = f * h[None,:]
        self.b0 = f.T * h[:,None]
        self.g0 = integrate_2d(np.abs(self.a) ** 2 + np.abs(self.b0) ** 2,axis,scheme)

    def evaluate(self,tau):
        p = np.exp(1j * self.axis * tau)
        b = self.b0 * np.conj(p)[:,None] * p[None,:]
        c = integrate_2d(np.abs(self.a - b) ** 2,self.axis,self.scheme)
        g = 2.0 * integrate_2d(np.real(self.a * np.conj(b)),self.axis,self.scheme)
        return OracleResult(c,self.g0,g)

def _axis(spectrum,network,stack,taus,grid):
    width = max(stack.span,max(abs(t - d) for t in taus for d in stack.delays))
    try:
        return grid.axis(spectrum,network,step_limit(spectrum,width))
    except ResolutionError as e:
        raise OracleResolutionError("c_tau_oracle: %s" % e)

def _fields(spectrum,network,stack,taus,grid):
    axis = _axis(spectrum,network,stack,taus,grid)
    return (_Field(spectrum,network,stack,axis,grid.scheme),
            _Field(spectrum,network,stack,refine(axis),grid.scheme))

def _checked(coarse,fine,tau):
    if abs(fine.g0 - coarse.g0) > CONVERGENCE_TOLERANCE * fine.g0:
        raise QuadratureConvergenceError("c_tau_oracle: G0 not converged [%.9g -> %.9g]" %
                                            (coarse.g0,fine.g0))
    if abs(fine.c - coarse.c) > CONVERGENCE_TOLERANCE * fine.g0:
        raise QuadratureConvergenceError("c_tau_oracle: C(%g) not converged [%.9g -> %.9g]" %
                                            (tau,coarse.c,fine.c))
    if fine.c < POSITIVITY_FLOOR:
        raise OracleError("c_tau_oracle: negative coincidence C(%g) = %g" % (tau,fine.c))
    return fine

def c_tau_oracle(spectrum,mod1,mod2,stack,tau,grid=None,epsilon=DEFAULT_EPSILON):
    """
        Coincidence C(tau) with its G0/G split (N0/4 omitted)
    """
    grid = grid or QuadratureGrid()
    network = build_sideband_network(mod1,mod2,epsilon)
    coarse,fine = _fields(spectrum,network,stack,[tau],grid)
    return _checked(coarse.evaluate(tau),fine.evaluate(tau),tau)

def oracle_interferogram(spectrum,mod1,mod2,stack,tau_grid,grid=None,
                         epsilon=DEFAULT_EPSILON,logger=None):
    """
        Gamma(tau) = C(tau)/G0 on a tau grid, both fields built once
    """
    grid = grid or QuadratureGrid()
    taus = check_tau_grid(tau_grid)
    network = build_sideband_network(mod1,mod2,epsilon)
    coarse,fine = _fields(spectrum,network,stack,taus,grid)
    gamma = np.empty(len(taus))
    for i,tau in enumerate(taus):
        r = _checked(coarse.evaluate(tau),fine.evaluate(tau),tau)
        gamma[i] = r.c / r.g0
        if logger:
            logger.log_progress("oracle",i + 1,len(taus))
    return Interferogram(taus,gamma,fine.g0,MODE.full)

def oracle_grid_points(spectrum,mod1,mod2,stack,tau_grid,grid=None,epsilon=DEFAULT_EPSILON):
    """
        Points per axis of the fine (refined) oracle grid
    """
    grid = grid or QuadratureGrid()
    taus = check_tau_grid(tau_grid)
    network = build_sideband_network(mod1,mod2,epsilon)
    return 2 * len(_axis(spectrum,network,stack,taus,grid)) - 1

def swap_consistency_check(spectrum,mod1,mod2,nu_samples,epsilon=DEFAULT_EPSILON):
    """
        Max |f(nu2,nu1) - f_swapped(nu1,nu2)| where the first is the
        oracle's argument swap and the second the engine's network with
        the arms exchanged
    """
    samples = np.asarray(list(nu_samples),dtype=float).reshape(-1,2)
    network = build_sideband_network(mod1,mod2,epsilon)
    nu1,nu2 = samples[:,0],samples[:,1]
    direct = jsa_pm(spectrum,network,nu2,nu1)
    swapped = jsa_pm(spectrum,network.swapped(),nu1,nu2)
    return float(np.max(np.abs(np.atleast_1d(direct - swapped))))

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
