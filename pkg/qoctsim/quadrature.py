# -*- coding: utf-8 -*-

"""
    Uniform 2-D detuning grids and composite quadrature shared by the
    G0 normalisation and the brute-force coincidence oracle.

    The grid covers [-E,E] on both axes with

        E = half_width * max(sigma_a,sigma_d) + largest significant shift

    and the step must resolve both the narrowest Gaussian (step <=
    min(sigma)/8) and the fastest delay oscillation (step <= 2pi/(8W)).

    >>> from qoctsim.biphoton import BiphotonSpectrum,ModulationSettings,build_sideband_network
    >>> s = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5)
    >>> net = build_sideband_network(ModulationSettings(),ModulationSettings())
    >>> grid = QuadratureGrid()
    >>> grid.extent(s,net)
    10.0
    >>> axis = grid.axis(s,net,step_limit(s,0.0))
    >>> len(axis), float(axis[0]), float(axis[-1])
    (321, -10.0, 10.0)
    >>> len(refine(axis))
    641
    >>> QuadratureGrid(points_per_axis=65).axis(s,net,0.0625) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    ResolutionError: grid step 0.3125 exceeds resolution limit 0.0625
    >>> QuadratureGrid(half_width=4.0) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    QuadratureError: QuadratureGrid: Attribute 'half_width' must be between 5.0-inf [4.0]

    Simpson integration of a separable Gaussian:

    >>> x = np.linspace(-8.0,8.0,161)
    >>> v = np.exp(-x[:,None]**2 - x[None,:]**2)
    >>> bool(abs(integrate_2d(v,x) - math.pi) < 1e-10)
    True

"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from qoctsim.bimap import Bimap
from qoctsim.ranges import check_int_range,check_range

class QuadratureError(Exception):
    pass

class ResolutionError(QuadratureError):
    pass

class ConvergenceError(QuadratureError):
    pass

SCHEME = Bimap('SCHEME',{0:'trapezoid',1:'simpson'},QuadratureError)

MIN_HALF_WIDTH = 5.0
MIN_POINTS = 64
# Entries lighter than this do not widen the grid or enter the integrand
WEIGHT_FLOOR = 1e-9
# Relative change allowed between a grid and its refinement
CONVERGENCE_TOLERANCE = 1e-3

@dataclass(frozen=True)
class QuadratureGrid:
    """
        half_width in multiples of max(sigma_a,sigma_d); points_per_axis=0
        selects the smallest odd size meeting the resolution limit
    """
    half_width: float = MIN_HALF_WIDTH
    points_per_axis: int = 0
    scheme: int = SCHEME.simpson

    def __post_init__(self):
        try:
            check_range("half_width",self.half_width,MIN_HALF_WIDTH,math.inf)
            if self.points_per_axis:
                check_int_range("points_per_axis",self.points_per_axis,MIN_POINTS,None)
            else:
                check_int_range("points_per_axis",self.points_per_axis,0,0)
        except ValueError as e:
            raise QuadratureError("QuadratureGrid: %s" % e)
        SCHEME[self.scheme]

    def extent(self,spectrum,network):
        return (self.half_width * max(spectrum.sigma_a,spectrum.sigma_d) +
                        network.max_shift(WEIGHT_FLOOR))

    def auto_points(self,spectrum,network,limit):
        n = 2 * int(math.ceil(self.extent(spectrum,network) / limit)) + 1
        return max(n,MIN_POINTS + 1)

    def axis(self,spectrum,network,limit):
        """
            Detuning axis; raises ResolutionError if an explicit
            points_per_axis is too coarse for the step limit
        """
        e = self.extent(spectrum,network)
        n = self.points_per_axis or self.auto_points(spectrum,network,limit)
        step = 2.0 * e / (n - 1)
        if step > limit * (1 + 1e-12):
            raise ResolutionError("grid step %g exceeds resolution limit %g" % (step,limit))
        return np.linspace(-e,e,n)

def step_limit(spectrum,width):
    """
        Largest admissible step for an integrand oscillating at delay
        'width' (ps) under Gaussians of width sigma_a, sigma_d
    """
    limit = min(spectrum.sigma_a,spectrum.sigma_d) / 8.0
    if width > 0:
        limit = min(limit,2.0 * math.pi / width / 8.0)
    return limit

def refine(axis):
    """
        Halve the step (keeps every existing node)
    """
    return np.linspace(axis[0],axis[-1],2 * len(axis) - 1)

def integrate_2d(values,axis,scheme=SCHEME.simpson):
    """
        Integrate values[i,j] sampled at (axis[i],axis[j]); rows first,
        in a fixed order
    """
    if scheme == SCHEME.simpson:
        rows = integrate.simpson(values,x=axis,axis=1)
        return float(integrate.simpson(rows,x=axis))
    rows = integrate.trapezoid(values,x=axis,axis=1)
    return float(integrate.trapezoid(rows,x=axis))

def converged(coarse,fine,tolerance=CONVERGENCE_TOLERANCE):
    return abs(fine - coarse) <= tolerance * abs(fine)

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
