# -*- coding: utf-8 -*-

"""
    Closed-form HOM coincidence engine.

    For a stack H(nu) = sum_j r_j exp(i phi_j) exp(i nu T_j) and a sideband
    network with entries p = (m,n), amplitudes L_p = J_m(b1) J_n(b2) and

        D+_p = m.W1 + n.W2          D-_p = m.W1 - n.W2

    the cross-interference term is

        G(tau) = 2 sum_pq L_p L_q . exp(-(D+_p - D+_q)^2 / 2sd^2)
                                  . exp(-(D-_p + D-_q)^2 / 2sa^2)
                   . [ sum_j r_j^2 k(T_j)
                     + sum_j<k 2 r_j r_k exp(-sd^2 D^2/32)
                               . cos(phi_k - phi_j + (D+_p + D+_q) D/4)
                               . k((T_j + T_k)/2) ]

    with D = T_k - T_j and

        k(T) = exp(-sa^2 (T - tau)^2 / 8) . cos((D-_p - D-_q)/2 (T - tau) - Th_pq)
        Th_pq = (m_p - m_q) theta1 + (n_p - n_q) theta2

    Every interface produces a dip at tau = T_j and every pair of
    interfaces an artifact at the midpoint. The normalised interferogram
    is Gamma(tau) = 1 - G(tau)/G0.

    The diagonal mode keeps only p = q (theta then drops out). G0 is
    evaluated by 2-D quadrature or by its closed form

        G0 = 2 sum_pq L_p L_q . exp(-(D+_p - D+_q)^2 / 2sd^2 - (D-_p - D-_q)^2 / 2sa^2)
               . sum_jk r_j r_k exp(-(sd^2 + sa^2) D_jk^2 / 32)
                        . cos(Th_pq + phi_k - phi_j + (n_p + n_q) W2 D_jk / 2)

    Single mirror, no modulation: a perfect dip at tau = 0.

    >>> from qoctsim.biphoton import BiphotonSpectrum,ModulationSettings,build_sideband_network
    >>> from qoctsim.sample import LayerStack
    >>> s = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5)
    >>> net = build_sideband_network(ModulationSettings(),ModulationSettings())
    >>> mirror = LayerStack.single()
    >>> g0(s,net,mirror,method='closed')
    2.0
    >>> g_cross_multilayer(s,net,mirror,0.0)
    2.0
    >>> ifg = interferogram(s,net,mirror,[0.0,30.0],g0_method='closed')
    >>> [round(g,9) for g in ifg.gamma.tolist()]
    [0.0, 1.0]

    Two layers: the artifact sign follows cos(phi_c). With phi_c = 0
    the artifact is a dip (A < 0), with phi_c = pi a peak:

    >>> from qoctsim.biphoton import CarrierPhase
    >>> stack = LayerStack.two_layer(0.6,0.97,6.0)
    >>> artifact_amplitude(s,net,stack,g0_method='closed') < 0
    True
    >>> s_pi = s.with_carrier(CarrierPhase.explicit(math.pi))
    >>> artifact_amplitude(s_pi,net,stack,g0_method='closed') > 0
    True

    Diagonal terms of the pair sum:

    >>> t = pair_term(net.entries[0],net.entries[0],net)
    >>> kappa(t,2.0,1.5,1.5)
    1.0

"""

import math
from collections import namedtuple
from dataclasses import dataclass,replace
from functools import cached_property,lru_cache

import numpy as np
from scipy import optimize

from qoctsim.bimap import Bimap
from qoctsim.biphoton import (BiphotonSpectrum,CarrierPhase,ModulationSettings,
                              build_sideband_network,jsa_pm)
from qoctsim.quadrature import (QuadratureError,QuadratureGrid,WEIGHT_FLOOR,
                                converged,integrate_2d,refine,step_limit)
from qoctsim.ranges import check_instance
from qoctsim.sample import LayerStack,transfer
from qoctsim.specfun import DEFAULT_EPSILON,gaussian_overlap

class EngineError(Exception):
    pass

class QuadratureConvergenceError(EngineError):
    pass

MODE = Bimap('MODE',{0:'full',1:'diagonal'},EngineError)
G0_METHOD = Bimap('G0_METHOD',{0:'auto',1:'closed',2:'quadrature'},EngineError)

# Delay envelopes below this are dropped from the sums
ENVELOPE_FLOOR = 1e-30
# 'auto' uses quadrature for G0 up to this many points per axis
AUTO_QUADRATURE_POINTS = 2049
# Above this many tau points the pair sums are grouped by (m-m',n-n')
GROUPED_MIN_POINTS = 16

SidebandPairTerm = namedtuple('SidebandPairTerm',
                        'm n m_prime n_prime lambda_product delta_plus delta_plus_prime '
                        'delta_minus delta_minus_prime theta_offset')

def pair_term(p,q,network):
    """
        SidebandPairTerm for network entries p=(m,n), q=(m',n')
    """
    w1,w2 = network.mod1.omega_rf,network.mod2.omega_rf
    t1,t2 = network.mod1.theta,network.mod2.theta
    return SidebandPairTerm(p.m,p.n,q.m,q.n,
                            p.amplitude * q.amplitude,
                            p.m * w1 + p.n * w2,q.m * w1 + q.n * w2,
                            p.m * w1 - p.n * w2,q.m * w1 - q.n * w2,
                            (p.m - q.m) * t1 + (p.n - q.n) * t2)

def pair_terms(network):
    for p in network.entries:
        for q in network.entries:
            yield pair_term(p,q,network)

def kappa(term,sigma_a,script_t,tau):
    """
        exp(-sa^2 (T - tau)^2 / 8) . cos((D-_p - D-_q)/2 (T - tau) - Th)
    """
    u = script_t - tau
    return (math.exp(-sigma_a * sigma_a * u * u / 8.0) *
            math.cos((term.delta_minus - term.delta_minus_prime) / 2.0 * u - term.theta_offset))

class _PairTable(object):

    """
        Vectorised (p,q) pairs of network entries with
        |L_p L_q| >= epsilon^2 . max|L_p L_q|
    """

    def __init__(self,network,diagonal=False):
        a = network.arrays
        idx = np.arange(len(network))
        if diagonal:
            p = q = idx
        else:
            p,q = (g.ravel() for g in np.meshgrid(idx,idx,indexing='ij'))
        lam = a.amplitude[p] * a.amplitude[q]
        keep = np.abs(lam) >= network.epsilon ** 2 * np.abs(lam).max()
        p,q = p[keep],q[keep]
        self.diagonal = diagonal
        self.size = len(p)
        self.lam = lam[keep]
        plus = a.shift1 + a.shift2
        minus = a.shift1 - a.shift2
        self.plus_diff = plus[p] - plus[q]
        self.plus_sum = plus[p] + plus[q]
        self.minus_diff = minus[p] - minus[q]
        self.minus_sum = minus[p] + minus[q]
        self.n_sum = a.n[p] + a.n[q]
        self.k1 = a.m[p] - a.m[q]
        self.k2 = a.n[p] - a.n[q]
        self.omega2 = network.mod2.omega_rf
        if diagonal:
            self.shift = np.zeros(self.size)
            self.theta = np.zeros(self.size)
        else:
            self.shift = self.minus_diff / 2.0
            self.theta = self.k1 * network.mod1.theta + self.k2 * network.mod2.theta
        self._groups = None
        self._network = network

    def cross_weight(self,spectrum):
        return (self.lam * gaussian_overlap(self.plus_diff,spectrum.sigma_d) *
                           gaussian_overlap(self.minus_sum,spectrum.sigma_a))

    def self_weight(self,spectrum):
        return (self.lam * gaussian_overlap(self.plus_diff,spectrum.sigma_d) *
                           gaussian_overlap(self.minus_diff,spectrum.sigma_a))

    def groups(self):
        """
            (order, starts, stops, shift, theta) grouping pairs by (m-m',n-n')
        """
        if self._groups is None:
            order = np.lexsort((self.k2,self.k1))
            k1,k2 = self.k1[order],self.k2[order]
            change = np.flatnonzero((np.diff(k1) != 0) | (np.diff(k2) != 0)) + 1
            starts = np.concatenate(([0],change))
            stops = np.append(change,len(order))
            g1,g2 = k1[starts],k2[starts]
            net = self._network
            if self.diagonal:
                shift = np.zeros(len(starts))
                theta = np.zeros(len(starts))
            else:
                shift = (g1 * net.mod1.omega_rf - g2 * net.mod2.omega_rf) / 2.0
                theta = g1 * net.mod1.theta + g2 * net.mod2.theta
            self._groups = (order,starts,stops,shift,theta)
        return self._groups

    def grouped(self,values):
        order,starts,stops,_,_ = self.groups()
        v = values[order]
        return np.array([math.fsum(v[i:j]) for i,j in zip(starts,stops)])

@lru_cache(maxsize=4)
def _pair_table(network,diagonal):
    return _PairTable(network,diagonal)

def _check_two_layer(stack,name):
    if len(stack) != 2:
        raise EngineError("%s: stack has %d layers (two required)" % (name,len(stack)))

def _two_layer_features(table,spectrum,stack,weight):
    """
        Dips at 0 and T, artifact at T/2 written out for two layers
    """
    (r1,t0),(r2,t) = stack.layers
    phi0,phi1 = spectrum.layer_phases(stack.delays)
    sd = spectrum.sigma_d
    d = t - t0
    artifact = 2.0 * r1 * r2 * math.exp(-sd * sd * d * d / 32.0)
    return [(t0,r1 * r1 * weight),
            (t,r2 * r2 * weight),
            ((t0 + t) / 2.0,artifact * np.cos((phi1 - phi0) + table.plus_sum * d / 4.0) * weight)]

def _features(table,spectrum,stack,weight):
    """
        Dip features at every T_j and artifact features at every midpoint
    """
    phases = spectrum.layer_phases(stack.delays)
    sd = spectrum.sigma_d
    features = [(l.delay,l.r * l.r * weight) for l in stack.layers]
    for j,k in stack.pairs():
        lj,lk = stack.layers[j],stack.layers[k]
        d = lk.delay - lj.delay
        artifact = 2.0 * lj.r * lk.r * math.exp(-sd * sd * d * d / 32.0)
        features.append(((lj.delay + lk.delay) / 2.0,
                         artifact * np.cos((phases[k] - phases[j]) + table.plus_sum * d / 4.0) * weight))
    return features

def _sum_pairs(table,features,sigma_a,tau):
    terms = []
    for center,coef in features:
        u = center - tau
        env = math.exp(-sigma_a * sigma_a * u * u / 8.0)
        if env < ENVELOPE_FLOOR:
            continue
        terms.append(env * coef * np.cos(table.shift * u - table.theta))
    return 2.0 * math.fsum(np.concatenate(terms)) if terms else 0.0

def _sum_grouped(table,features,sigma_a,taus):
    _,_,_,shift,theta = table.groups()
    grouped = [(center,table.grouped(coef)) for center,coef in features]
    out = np.empty(len(taus))
    for i,tau in enumerate(taus):
        terms = []
        for center,coef in grouped:
            u = center - tau
            env = math.exp(-sigma_a * sigma_a * u * u / 8.0)
            if env < ENVELOPE_FLOOR:
                continue
            terms.append(env * coef * np.cos(shift * u - theta))
        out[i] = 2.0 * math.fsum(np.concatenate(terms)) if terms else 0.0
    return out

def _evaluate(table,features,sigma_a,tau):
    taus = np.atleast_1d(np.asarray(tau,dtype=float))
    if len(taus) >= GROUPED_MIN_POINTS:
        out = _sum_grouped(table,features,sigma_a,taus)
    else:
        out = np.array([_sum_pairs(table,features,sigma_a,t) for t in taus])
    return float(out[0]) if np.ndim(tau) == 0 else out

def g_cross_two_layer(spectrum,network,stack,tau):
    """
        Full double sum for a two-layer stack (tau scalar or array)
    """
    _check_two_layer(stack,"g_cross_two_layer")
    table = _pair_table(network,False)
    features = _two_layer_features(table,spectrum,stack,table.cross_weight(spectrum))
    return _evaluate(table,features,spectrum.sigma_a,tau)

def g_cross_multilayer(spectrum,network,stack,tau):
    """
        Full double sum for any stack
    """
    table = _pair_table(network,False)
    features = _features(table,spectrum,stack,table.cross_weight(spectrum))
    return _evaluate(table,features,spectrum.sigma_a,tau)

def g_cross_diagonal(spectrum,network,stack,tau):
    """
        Diagonal (m=m', n=n') restriction for a two-layer stack
    """
    _check_two_layer(stack,"g_cross_diagonal")
    table = _pair_table(network,True)
    features = _two_layer_features(table,spectrum,stack,table.cross_weight(spectrum))
    return _evaluate(table,features,spectrum.sigma_a,tau)

def g_cross(spectrum,network,stack,tau,mode=MODE.full):
    """
        Cross term for any stack in either mode
    """
    table = _pair_table(network,MODE.parse(mode) == MODE.diagonal)
    features = _features(table,spectrum,stack,table.cross_weight(spectrum))
    return _evaluate(table,features,spectrum.sigma_a,tau)

def g0_closed(spectrum,network,stack):
    table = _pair_table(network,False)
    weight = table.self_weight(spectrum)
    phases = spectrum.layer_phases(stack.delays)
    width = spectrum.sigma_a ** 2 + spectrum.sigma_d ** 2
    terms = []
    for j,lj in enumerate(stack.layers):
        for k,lk in enumerate(stack.layers):
            d = lk.delay - lj.delay
            env = lj.r * lk.r * math.exp(-width * d * d / 32.0)
            if env < ENVELOPE_FLOOR:
                continue
            terms.append(env * weight * np.cos(table.theta + (phases[k] - phases[j]) +
                                               table.n_sum * table.omega2 * d / 2.0))
    return 2.0 * math.fsum(np.concatenate(terms)) if terms else 0.0

def _g0_on_axis(spectrum,network,stack,axis,scheme):
    phases = spectrum.layer_phases(stack.delays)
    f = jsa_pm(spectrum,network,axis[:,None],axis[None,:],floor=WEIGHT_FLOOR)
    h2 = np.abs(transfer(stack,axis,phases)) ** 2
    intensity = np.abs(f) ** 2
    integrand = intensity * h2[None,:] + intensity.T * h2[:,None]
    return integrate_2d(integrand,axis,scheme)

def g0_quadrature(spectrum,network,stack,grid=None):
    """
        G0 by 2-D quadrature; the grid is refined once and the two
        results must agree to 0.1%
    """
    grid = grid or QuadratureGrid()
    try:
        axis = grid.axis(spectrum,network,step_limit(spectrum,stack.span))
    except QuadratureError as e:
        raise EngineError("g0: %s" % e)
    coarse = _g0_on_axis(spectrum,network,stack,axis,grid.scheme)
    fine = _g0_on_axis(spectrum,network,stack,refine(axis),grid.scheme)
    if not converged(coarse,fine):
        raise QuadratureConvergenceError("g0: quadrature not converged [%.9g -> %.9g]" % (coarse,fine))
    return fine

def g0(spectrum,network,stack,method='auto',grid=None):
    """
        Self-interference normalisation G0 (tau independent, > 0)
    """
    method = G0_METHOD.parse(method)
    if method == G0_METHOD.auto:
        grid = grid or QuadratureGrid()
        limit = step_limit(spectrum,stack.span)
        if grid.auto_points(spectrum,network,limit) <= AUTO_QUADRATURE_POINTS:
            method = G0_METHOD.quadrature
        else:
            method = G0_METHOD.closed
    if method == G0_METHOD.quadrature:
        value = g0_quadrature(spectrum,network,stack,grid)
    else:
        value = g0_closed(spectrum,network,stack)
    if not value > 0:
        raise EngineError("g0: normalisation must be positive [%s]" % value)
    return value

@dataclass(frozen=True,eq=False)
class Interferogram:
    """
        Normalised interferogram Gamma(tau) = 1 - G(tau)/G0
    """
    tau_grid: np.ndarray
    gamma: np.ndarray
    g0: float
    mode: int = MODE.full
    digest: str = ""

    def __post_init__(self):
        if len(self.tau_grid) != len(self.gamma):
            raise EngineError("Interferogram: tau_grid and gamma differ in length")
        if not self.g0 > 0:
            raise EngineError("Interferogram: g0 must be positive [%s]" % self.g0)

    def counts(self,n0):
        """
            Raw coincidences (N0/4).(G0 - G) for a background rate N0
        """
        return n0 / 4.0 * self.g0 * self.gamma

    def rows(self):
        return zip(self.tau_grid.tolist(),self.gamma.tolist())

def check_tau_grid(tau_grid):
    taus = np.asarray(tau_grid,dtype=float)
    if taus.ndim != 1 or len(taus) == 0:
        raise EngineError("tau grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(taus)):
        raise EngineError("tau grid must be finite")
    if len(taus) > 1 and not np.all(np.diff(taus) > 0):
        raise EngineError("tau grid must be strictly increasing")
    return taus

def interferogram(spectrum,network,stack,tau_grid,mode=MODE.full,g0_method='auto',
                  digest="",grid=None):
    taus = check_tau_grid(tau_grid)
    mode = MODE.parse(mode)
    norm = g0(spectrum,network,stack,g0_method,grid)
    g = np.atleast_1d(g_cross(spectrum,network,stack,taus,mode))
    return Interferogram(taus,1.0 - g / norm,norm,mode,digest)

def artifact_amplitude(spectrum,network,stack,mode=MODE.full,g0_method='auto',norm=None):
    """
        A = Gamma(T/2) - 1 for a two-layer stack (A > 0 peak, A < 0 dip)
    """
    _check_two_layer(stack,"artifact_amplitude")
    if norm is None:
        norm = g0(spectrum,network,stack,g0_method)
    return -g_cross(spectrum,network,stack,stack.span / 2.0,mode) / norm

class CarrierResponse(namedtuple('CarrierResponse','g_fixed g_cos g_sin g0_fixed g0_cos g0_sin')):

    """
        G(T/2) and G0 of a two-layer stack as a + b.cos(phi) - c.sin(phi)
    """

    __slots__ = ()

    def amplitude(self,phi):
        c,s = math.cos(phi),math.sin(phi)
        g = self.g_fixed + c * self.g_cos - s * self.g_sin
        norm = self.g0_fixed + c * self.g0_cos - s * self.g0_sin
        return -g / norm

def carrier_response(spectrum,network,stack,mode=MODE.full):
    """
        Split G(T/2) and the closed-form G0 of a two-layer stack into
        terms constant, cos(phi) and -sin(phi) in the carrier phase, so
        that A(phi) = response.amplitude(phi) is cheap to evaluate
    """
    _check_two_layer(stack,"carrier_response")
    (r1,_),(r2,t) = stack.layers
    sa,sd = spectrum.sigma_a,spectrum.sigma_d
    table = _pair_table(network,MODE.parse(mode) == MODE.diagonal)
    weight = table.cross_weight(spectrum)
    mid = t / 2.0
    dips = [(0.0,r1 * r1 * weight),(t,r2 * r2 * weight)]
    g_fixed = _sum_pairs(table,dips,sa,mid)
    artifact = 2.0 * r1 * r2 * math.exp(-sd * sd * t * t / 32.0)
    psi = table.plus_sum * t / 4.0
    g_cos = _sum_pairs(table,[(mid,artifact * np.cos(psi) * weight)],sa,mid)
    g_sin = _sum_pairs(table,[(mid,artifact * np.sin(psi) * weight)],sa,mid)
    full = _pair_table(network,False)
    w0 = full.self_weight(spectrum)
    chi = full.n_sum * full.omega2 * t / 2.0
    env = r1 * r2 * math.exp(-(sa * sa + sd * sd) * t * t / 32.0)
    g0_fixed = 2.0 * math.fsum((r1 * r1 + r2 * r2) * w0 * np.cos(full.theta))
    if env < ENVELOPE_FLOOR:
        g0_cos = g0_sin = 0.0
    else:
        g0_cos = 2.0 * math.fsum(env * w0 * (np.cos(full.theta + chi) + np.cos(full.theta - chi)))
        g0_sin = 2.0 * math.fsum(env * w0 * (np.sin(full.theta + chi) - np.sin(full.theta - chi)))
    return CarrierResponse(g_fixed,g_cos,g_sin,g0_fixed,g0_cos,g0_sin)

def calibrate_peak_phase(spectrum,stack,epsilon=DEFAULT_EPSILON):
    """
        Carrier phase (explicit, in [0,2pi]) for which the unmodulated
        artifact at the outermost midpoint is a maximal peak
    """
    if len(stack) < 2:
        return 0.0
    network = build_sideband_network(ModulationSettings(),ModulationSettings(),epsilon)
    mid = stack.span / 2.0
    def objective(phi):
        s = spectrum.with_carrier(CarrierPhase.explicit(phi))
        return g_cross(s,network,stack,mid) / g0_closed(s,network,stack)
    result = optimize.minimize_scalar(objective,bounds=(0.0,2.0 * math.pi),method='bounded',
                                      options={'xatol':1e-10})
    return float(result.x)

@dataclass(frozen=True)
class Scenario:
    """
        Everything the engine needs for one configuration
    """
    spectrum: BiphotonSpectrum
    stack: LayerStack
    mod1: ModulationSettings = ModulationSettings()
    mod2: ModulationSettings = ModulationSettings()
    mode: int = MODE.full
    epsilon: float = DEFAULT_EPSILON
    g0_method: str = 'auto'

    def __post_init__(self):
        check_instance("spectrum",self.spectrum,BiphotonSpectrum)
        check_instance("stack",self.stack,LayerStack)
        object.__setattr__(self,"mode",MODE.parse(self.mode))
        G0_METHOD.parse(self.g0_method)

    @cached_property
    def network(self):
        return build_sideband_network(self.mod1,self.mod2,self.epsilon)

    def replace(self,**changes):
        return replace(self,**changes)

    def g0(self):
        return g0(self.spectrum,self.network,self.stack,self.g0_method)

    def interferogram(self,tau_grid,digest=""):
        return interferogram(self.spectrum,self.network,self.stack,tau_grid,
                             self.mode,self.g0_method,digest)

    def artifact_amplitude(self):
        return artifact_amplitude(self.spectrum,self.network,self.stack,
                                  self.mode,self.g0_method)

    def carrier_response(self):
        return carrier_response(self.spectrum,self.network,self.stack,self.mode)

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
