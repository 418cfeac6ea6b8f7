# -*- coding: utf-8 -*-

"""
    Biphoton joint spectral amplitude (JSA) and the sideband network
    produced by phase-modulating both arms.

    All frequencies are detunings nu = omega - omega0 in rad/ps. The
    unmodulated JSA is the positive square root of a Gaussian joint
    spectral intensity normalised to unit integral:

        f(nu1,nu2) = 2/sqrt(pi.sa.sd) . exp(-(nu1+nu2)^2/sd^2)
                                      . exp(-(nu1-nu2)^2/sa^2)

    >>> s = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5)
    >>> round(jsa_base(s,0.0,0.0),5)
    1.12838
    >>> jsa_base(s,0.3,-0.7) == jsa_base(s,-0.7,0.3)
    True

    Driving each arm with an EOM (beta.sin(Omega.t + theta)) spreads the
    JSA over a network of shifted copies with weights

        J_m(beta1) J_n(beta2) exp(i(m.theta1 + n.theta2))

    >>> net = build_sideband_network(ModulationSettings(),ModulationSettings())
    >>> len(net.entries), net.entries[0].weight
    (1, (1+0j))
    >>> jsa_pm(s,net,0.3,-0.2) == jsa_base(s,0.3,-0.2)
    True

    >>> m1 = ModulationSettings(beta=1.0,omega_rf=0.5)
    >>> net = build_sideband_network(m1,ModulationSettings())
    >>> sorted(set(e.n for e in net.entries))
    [0]
    >>> net.total_weight() >= 1 - 1e-10
    True

    Modulation depth from the RF drive (V = half the peak-to-peak value):

    >>> from_drive_voltage(0.0,3.08)
    0.0
    >>> round(from_drive_voltage(2*3.08,3.08),12)
    3.14159265359
    >>> round(from_drive_voltage(7.24,3.08),2)
    3.69

    Theta is normalised to [0,2pi):

    >>> round(ModulationSettings(theta=-math.pi/2).theta,12)
    4.712388980385

    The carrier phase of each layer is either explicit or derived from
    omega0 (mod 2pi, computed in extended precision):

    >>> CarrierPhase.explicit(math.pi).layer_phases((0.0,10.0,20.0))
    (0.0, 1.5707963267948966, 3.141592653589793)
    >>> CarrierPhase.per_layer((0.0,2.0)).layer_phases((0.0,6.0))
    (0.0, 2.0)
    >>> p = CarrierPhase.from_omega0().layer_phases((0.0,1.0),omega0=10.0)
    >>> round(p[1],12)
    3.71681469282

"""

import cmath,math
from collections import namedtuple
from dataclasses import dataclass,replace
from decimal import Decimal,localcontext
from functools import cached_property

import numpy as np
from scipy import constants

from qoctsim.bimap import Bimap
from qoctsim.ranges import check_instance,check_nonnegative,check_open_range,check_positive
from qoctsim.specfun import DEFAULT_EPSILON,bessel_j_orders,truncation_order

class BiphotonError(Exception):
    pass

CARRIER = Bimap('CARRIER',{0:'explicit',1:'from_omega0'},BiphotonError)

TWO_PI = 2.0 * math.pi
_TWO_PI_DEC = Decimal("6.28318530717958647692528676655900576839433879875021164194989")

# Speed of light in nm/ps (and mm/ps)
C_NM_PER_PS = constants.c * 1e-3
C_MM_PER_PS = constants.c * 1e-9

def ghz_to_rad_per_ps(freq_ghz):
    """
        >>> round(ghz_to_rad_per_ps(12.7),6)
        0.079796
    """
    return TWO_PI * freq_ghz * 1e-3

def rad_per_ps_to_ghz(omega):
    return omega / (TWO_PI * 1e-3)

def omega_from_wavelength_nm(wavelength_nm):
    """
        Angular frequency (rad/ps) of light at the given vacuum wavelength

        >>> round(omega_from_wavelength_nm(800.0),3)
        2354.564
    """
    check_positive("wavelength_nm",wavelength_nm)
    return TWO_PI * C_NM_PER_PS / wavelength_nm

def sigma_a_from_filter(center_nm,fwhm_nm):
    """
        Anti-diagonal bandwidth from a bandpass filter: the filter FWHM
        (converted to rad/ps) is taken as the FWHM of exp(-2(x/sigma)^2)

        >>> round(sigma_a_from_filter(800.0,40.0),2)
        99.99
    """
    check_positive("center_wavelength_nm",center_nm)
    check_positive("filter_fwhm_nm",fwhm_nm)
    fwhm = TWO_PI * C_NM_PER_PS * fwhm_nm / (center_nm * center_nm)
    return fwhm / math.sqrt(2.0 * math.log(2.0))

def from_drive_voltage(v_pp,v_pi):
    """
        Modulation index beta = pi.(v_pp/2)/v_pi
    """
    check_nonnegative("v_pp",v_pp)
    if not v_pi > 0:
        raise BiphotonError("from_drive_voltage: v_pi must be positive [%s]" % v_pi)
    return math.pi * (v_pp / 2.0) / v_pi

def normalize_angle(theta):
    t = math.fmod(theta,TWO_PI)
    if t < 0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t

@dataclass(frozen=True)
class CarrierPhase:
    """
        Carrier-phase policy: explicit phase(s) or omega0.T_j mod 2pi

        An explicit scalar phi is spread linearly over the stack
        (phi_j = phi.T_j/T_last) so that a two-layer stack gets (0,phi).
        Explicit per-layer phases are used as given.
    """
    kind: int = CARRIER.explicit
    phase: float = 0.0
    layers: tuple = ()

    def __post_init__(self):
        CARRIER[self.kind]
        check_instance("layers",self.layers,tuple)
        if self.kind == CARRIER.explicit:
            for p in (self.phase,) + self.layers:
                if not math.isfinite(p):
                    raise BiphotonError("Carrier phase must be finite [%s]" % p)

    @classmethod
    def explicit(cls,phase):
        return cls(CARRIER.explicit,float(phase))

    @classmethod
    def per_layer(cls,phases):
        return cls(CARRIER.explicit,0.0,tuple(float(p) for p in phases))

    @classmethod
    def from_omega0(cls):
        return cls(CARRIER.from_omega0)

    def layer_phases(self,delays,omega0=0.0):
        delays = tuple(float(d) for d in delays)
        if self.kind == CARRIER.from_omega0:
            if not omega0 > 0:
                raise BiphotonError("Carrier phase from omega0 needs omega0 > 0 [%s]" % omega0)
            with localcontext() as ctx:
                ctx.prec = 60
                w = Decimal(repr(float(omega0)))
                return tuple(float((w * Decimal(repr(d))) % _TWO_PI_DEC) for d in delays)
        if self.layers:
            if len(self.layers) != len(delays):
                raise BiphotonError("Carrier phase: %d layer phases for %d layers" %
                                        (len(self.layers),len(delays)))
            return self.layers
        last = delays[-1]
        if last <= 0:
            return tuple(0.0 for d in delays)
        return tuple(self.phase * (d / last) for d in delays)

@dataclass(frozen=True)
class BiphotonSpectrum:
    """
        Gaussian JSA parameters (rad/ps) and carrier-phase policy
    """
    sigma_a: float
    sigma_d: float
    omega0: float = 0.0
    carrier: CarrierPhase = CarrierPhase()

    def __post_init__(self):
        check_positive("sigma_a",self.sigma_a)
        check_positive("sigma_d",self.sigma_d)
        check_nonnegative("omega0",self.omega0)
        check_instance("carrier",self.carrier,CarrierPhase)
        if self.carrier.kind == CARRIER.from_omega0 and not self.omega0 > 0:
            raise BiphotonError("BiphotonSpectrum: omega0 must be > 0 when carrier phase is from_omega0")

    @property
    def norm(self):
        return 2.0 / math.sqrt(math.pi * self.sigma_a * self.sigma_d)

    def with_carrier(self,carrier):
        return replace(self,carrier=carrier)

    def layer_phases(self,delays):
        return self.carrier.layer_phases(delays,self.omega0)

@dataclass(frozen=True)
class ModulationSettings:
    """
        EOM drive for one arm: beta.sin(omega_rf.t + theta)
    """
    beta: float = 0.0
    omega_rf: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        check_nonnegative("beta",self.beta)
        check_nonnegative("omega_rf",self.omega_rf)
        if not math.isfinite(self.theta):
            raise BiphotonError("ModulationSettings: theta must be finite [%s]" % self.theta)
        object.__setattr__(self,"theta",normalize_angle(float(self.theta)))

SidebandEntry = namedtuple('SidebandEntry','m n amplitude weight shift1 shift2')

@dataclass(frozen=True)
class SidebandNetwork:
    """
        Truncated set of (m,n) sub-JSAs. Each entry carries the real
        amplitude J_m(beta1).J_n(beta2), the complex weight including the
        drive phases, and the frequency shifts m.Omega1 and n.Omega2.
    """
    entries: tuple
    mod1: ModulationSettings = ModulationSettings()
    mod2: ModulationSettings = ModulationSettings()
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        check_instance("entries",self.entries,tuple)
        check_open_range("epsilon",self.epsilon,0.0,1.0)
        if not self.entries:
            raise BiphotonError("SidebandNetwork: no entries")
        if len(set((e.m,e.n) for e in self.entries)) != len(self.entries):
            raise BiphotonError("SidebandNetwork: duplicate (m,n) entries")

    def __len__(self):
        return len(self.entries)

    @cached_property
    def arrays(self):
        """
            Entry columns as numpy arrays (m, n, amplitude, weight, shift1, shift2)
        """
        cols = list(zip(*self.entries))
        return SidebandEntry(np.array(cols[0],dtype=int),
                             np.array(cols[1],dtype=int),
                             np.array(cols[2],dtype=float),
                             np.array(cols[3],dtype=complex),
                             np.array(cols[4],dtype=float),
                             np.array(cols[5],dtype=float))

    def total_weight(self):
        return math.fsum(abs(e.weight) ** 2 for e in self.entries)

    def max_shift(self,floor=0.0):
        """
            Largest |shift| over entries with |weight| >= floor
        """
        return max(max(abs(e.shift1),abs(e.shift2)) for e in self.entries
                        if abs(e.weight) >= floor or (e.m,e.n) == (0,0))

    def swapped(self):
        """
            Network with the two arms exchanged
        """
        return build_sideband_network(self.mod2,self.mod1,self.epsilon)

def build_sideband_network(mod1,mod2,epsilon=DEFAULT_EPSILON):
    """
        Network covering |m| <= M1, |n| <= M2 with M from truncation_order
    """
    m1 = truncation_order(mod1.beta,epsilon)
    m2 = truncation_order(mod2.beta,epsilon)
    j1 = bessel_j_orders(m1,mod1.beta)
    j2 = bessel_j_orders(m2,mod2.beta)
    def jm(values,m):
        v = float(values[abs(m)])
        return -v if (m < 0 and m % 2) else v
    entries = []
    for m in range(-m1,m1+1):
        for n in range(-m2,m2+1):
            amplitude = jm(j1,m) * jm(j2,n)
            phase = m * mod1.theta + n * mod2.theta
            weight = amplitude * cmath.exp(1j * phase) if phase else complex(amplitude)
            entries.append(SidebandEntry(m,n,amplitude,weight,
                                         m * mod1.omega_rf,n * mod2.omega_rf))
    return SidebandNetwork(tuple(entries),mod1,mod2,epsilon)

def _result(v):
    return v.item() if np.ndim(v) == 0 else v

def jsa_base(spectrum,nu1,nu2):
    """
        Unmodulated JSA at detunings (nu1,nu2); accepts numpy arrays
    """
    nu1 = np.asarray(nu1,dtype=float)
    nu2 = np.asarray(nu2,dtype=float)
    sa,sd = spectrum.sigma_a,spectrum.sigma_d
    v = spectrum.norm * np.exp(-np.square(nu1 + nu2) / (sd * sd)
                               - np.square(nu1 - nu2) / (sa * sa))
    return _result(v)

def jsa_pm(spectrum,network,nu1,nu2,floor=0.0):
    """
        Phase-modulated JSA: sum of weight(m,n).f(nu1 - m.Omega1, nu2 - n.Omega2)

        Entries with |weight| < floor are skipped (floor=0 keeps all)
    """
    nu1 = np.asarray(nu1,dtype=float)
    nu2 = np.asarray(nu2,dtype=float)
    total = np.zeros(np.broadcast(nu1,nu2).shape,dtype=complex)
    for e in network.entries:
        if e.weight == 0 or abs(e.weight) < floor:
            continue
        total += e.weight * jsa_base(spectrum,nu1 - e.shift1,nu2 - e.shift2)
    return _result(total)

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
