# -*- coding: utf-8 -*-

"""
    Special functions used by the sideband network and the engine.

    Bessel functions of the first kind (integer order) are computed with
    Miller's downward recurrence normalised by the identity

        J_0(x) + 2*(J_2(x) + J_4(x) + ...) = 1

    with a power series for |x| < 1. The supported range is |x| <= 50,
    far beyond the modulation indices used in practice.

    >>> bessel_j(0,0.0)
    1.0
    >>> bessel_j(3,0.0)
    0.0
    >>> abs(bessel_j(0,2.404826)) < 1e-5
    True
    >>> bessel_j(-3,1.5) == -bessel_j(3,1.5)
    True
    >>> round(bessel_j(1,1.0),12)
    0.440050585745
    >>> bessel_j(0,60.0) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    SpecfunError: bessel_j: argument outside supported range |x| <= 50 [60.0]

    The truncation order is the smallest M such that the weight outside
    |m| <= M is below epsilon:

    >>> truncation_order(0.0,1e-12)
    0
    >>> r = BesselOrderRange.for_beta(1.2,1e-10)
    >>> r.max_order == truncation_order(1.2,1e-10)
    True
    >>> list(BesselOrderRange(2,1e-10).orders())
    [-2, -1, 0, 1, 2]

"""

import math
from dataclasses import dataclass

import numpy as np

from qoctsim.ranges import check_finite,check_int_range,check_nonnegative,check_open_range

DEFAULT_EPSILON = 1e-10
MAX_ARGUMENT = 50.0

# Rescale thresholds for the downward recurrence
BIGNO = 1.0e250
BIGNI = 1.0e-250

class SpecfunError(Exception):
    pass

def _series(order,x):
    half = 0.5 * x
    term = 1.0
    for k in range(1,order+1):
        term *= half / k
    total = term
    hh = -half * half
    k = 0
    while True:
        k += 1
        term *= hh / (k * (order + k))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total

def _miller(nmax,x):
    top = max(nmax,int(x))
    start = top + 20 + int(math.sqrt(40.0 * (top + 1)))
    start += start % 2
    bj = np.zeros(start + 2)
    bj[start] = 1.0
    tox = 2.0 / x
    for k in range(start,0,-1):
        bj[k-1] = k * tox * bj[k] - bj[k+1]
        if abs(bj[k-1]) > BIGNO:
            bj[k-1:] *= BIGNI
    norm = bj[0] + 2.0 * math.fsum(bj[2:start+1:2])
    return bj[:nmax+1] / norm

def _check_argument(x):
    check_finite("x",x)
    if abs(x) > MAX_ARGUMENT:
        raise SpecfunError("bessel_j: argument outside supported range |x| <= %g [%s]" %
                                (MAX_ARGUMENT,x))

def bessel_j(order,x):
    """
        J_order(x) for signed integer order and real |x| <= 50
    """
    check_int_range("order",order,-10000,10000)
    _check_argument(x)
    m = abs(order)
    ax = abs(float(x))
    if ax < 1.0:
        v = _series(m,ax)
    else:
        v = float(_miller(m,ax)[m])
    if m % 2 and ((order < 0) != (x < 0)):
        v = -v
    return v

def bessel_j_orders(max_order,x):
    """
        Array [J_0(x), J_1(x), ... J_max_order(x)]
    """
    check_int_range("max_order",max_order,0,10000)
    _check_argument(x)
    ax = abs(float(x))
    if ax < 1.0:
        values = np.array([_series(m,ax) for m in range(max_order+1)])
    else:
        values = _miller(max_order,ax)
    if x < 0:
        values[1::2] = -values[1::2]
    return values

def truncation_order(beta,epsilon=DEFAULT_EPSILON):
    """
        Smallest M with 1 - sum(J_m(beta)^2, |m| <= M) < epsilon

        The tail 2 * sum(J_m^2, m > M) is summed directly.
    """
    check_open_range("epsilon",epsilon,0.0,1.0)
    check_nonnegative("beta",beta)
    _check_argument(beta)
    if beta == 0:
        return 0
    nmax = int(abs(beta)) + 40
    sq = bessel_j_orders(nmax,beta) ** 2
    for m in range(nmax + 1):
        if 2.0 * math.fsum(sq[m+1:]) < epsilon:
            return m
    return nmax

def gaussian_overlap(delta,sigma):
    """
        exp(-delta^2 / (2 sigma^2)), overlap of two shifted Gaussians
    """
    return np.exp(-np.square(delta) / (2.0 * sigma * sigma))

@dataclass(frozen=True)
class BesselOrderRange:
    """
        Truncated order range |m| <= max_order for a given tolerance
    """
    max_order: int
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        check_int_range("max_order",self.max_order,0,None)
        check_open_range("epsilon",self.epsilon,0.0,1.0)

    @classmethod
    def for_beta(cls,beta,epsilon=DEFAULT_EPSILON):
        return cls(truncation_order(beta,epsilon),epsilon)

    def orders(self):
        return range(-self.max_order,self.max_order+1)

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
