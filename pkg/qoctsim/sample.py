# -*- coding: utf-8 -*-

"""
    Axial sample model: a stack of reflecting interfaces with amplitude
    reflection coefficients r_j and round-trip delays T_j (ps).

        H(nu) = sum_j r_j . exp(i.phi_j) . exp(i.nu.T_j)

    where phi_j is the carrier phase of layer j (see
    biphoton.CarrierPhase). Multiple reflections between layers and
    losses through earlier layers are not modelled.

    >>> mirror = LayerStack.single()
    >>> transfer(mirror,3.7)
    (1+0j)
    >>> s = LayerStack.from_pairs([(0.5,0.0),(0.25,20.1)])
    >>> transfer(s,0.0)
    (0.75+0j)
    >>> s.delays
    (0.0, 20.1)

    Physical stacks take thicknesses in mm, refractive indices and power
    reflectivities (R = r^2):

    >>> s = from_physical_stack([2.0],[1.5],[0.36,0.95])
    >>> [round(d,2) for d in s.delays]
    [0.0, 20.01]
    >>> [round(r,6) for r in s.reflections]
    [0.6, 0.974679]
    >>> from_physical_stack([],[],[1.0]) == LayerStack.single()
    True
    >>> from_physical_stack([-1.0],[1.5],[0.36,0.95]) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    SampleError: thickness_mm[0]: Attribute 'thickness' must be non-negative [-1.0]

"""

import math
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from qoctsim.biphoton import C_MM_PER_PS
from qoctsim.ranges import check_instance,check_nonnegative,check_range

class SampleError(Exception):
    pass

Layer = namedtuple('Layer','r delay')

@dataclass(frozen=True)
class LayerStack:
    """
        Ordered interfaces; the front surface defines the delay origin
    """
    layers: tuple

    def __post_init__(self):
        check_instance("layers",self.layers,tuple)
        if not self.layers:
            raise SampleError("LayerStack: at least one layer required")
        for i,layer in enumerate(self.layers):
            try:
                check_range("r",layer.r,0.0,1.0)
                check_nonnegative("delay",layer.delay)
            except (ValueError,AttributeError) as e:
                raise SampleError("layers[%d]: %s" % (i,e))
        if self.layers[0].delay != 0:
            raise SampleError("LayerStack: first delay must be 0 [%s]" % self.layers[0].delay)
        for a,b in zip(self.layers,self.layers[1:]):
            if not b.delay > a.delay:
                raise SampleError("LayerStack: delays must be strictly increasing [%s,%s]" %
                                        (a.delay,b.delay))

    @classmethod
    def from_pairs(cls,pairs):
        return cls(tuple(Layer(float(r),float(t)) for r,t in pairs))

    @classmethod
    def single(cls,r=1.0):
        return cls((Layer(float(r),0.0),))

    @classmethod
    def two_layer(cls,r1,r2,delay):
        return cls((Layer(float(r1),0.0),Layer(float(r2),float(delay))))

    def __len__(self):
        return len(self.layers)

    @property
    def delays(self):
        return tuple(l.delay for l in self.layers)

    @property
    def reflections(self):
        return tuple(l.r for l in self.layers)

    @property
    def span(self):
        return self.layers[-1].delay

    def pairs(self):
        """
            Interface pairs (j,k), j < k
        """
        n = len(self.layers)
        return [(j,k) for j in range(n) for k in range(j+1,n)]

    def midpoints(self):
        return [(self.layers[j].delay + self.layers[k].delay) / 2.0 for j,k in self.pairs()]

def transfer_layers(layers,nu,phases=None):
    """
        Sum over any iterable of layers (no ordering requirement)

        >>> a = [Layer(0.5,0.0),Layer(0.2,3.0)]
        >>> b = [Layer(0.3,7.0)]
        >>> transfer_layers(a + b,0.4) == transfer_layers(a,0.4) + transfer_layers(b,0.4)
        True
    """
    layers = list(layers)
    if phases is None:
        phases = [0.0] * len(layers)
    nu = np.asarray(nu,dtype=float)
    total = np.zeros(nu.shape,dtype=complex)
    for layer,phi in zip(layers,phases):
        total = total + layer.r * np.exp(1j * (phi + nu * layer.delay))
    return total.item() if total.ndim == 0 else total

def transfer(stack,nu,phases=None):
    """
        H(nu) for the stack; phases are the per-layer carrier phases
        (BiphotonSpectrum.layer_phases(stack.delays)), default zero
    """
    if phases is not None and len(phases) != len(stack):
        raise SampleError("transfer: %d phases for %d layers" % (len(phases),len(stack)))
    return transfer_layers(stack.layers,nu,phases)

def from_physical_stack(thicknesses,indices,reflectivities,amplitude=False):
    """
        Stack from slab thicknesses (mm) and indices between consecutive
        interfaces; reflectivities are power fractions R (r = sqrt(R))
        unless amplitude=True
    """
    thicknesses = list(thicknesses)
    indices = list(indices)
    reflectivities = list(reflectivities)
    if len(thicknesses) != len(indices):
        raise SampleError("from_physical_stack: %d thicknesses for %d indices" %
                                (len(thicknesses),len(indices)))
    if len(reflectivities) != len(thicknesses) + 1:
        raise SampleError("from_physical_stack: need %d reflectivities [%d]" %
                                (len(thicknesses) + 1,len(reflectivities)))
    delays = [0.0]
    for i,(d,n) in enumerate(zip(thicknesses,indices)):
        try:
            check_nonnegative("thickness",d)
        except ValueError as e:
            raise SampleError("thickness_mm[%d]: %s" % (i,e))
        try:
            check_range("n",n,1.0,math.inf)
        except ValueError as e:
            raise SampleError("n[%d]: %s" % (i,e))
        delays.append(delays[-1] + 2.0 * d * n / C_MM_PER_PS)
    layers = []
    for i,(R,t) in enumerate(zip(reflectivities,delays)):
        try:
            check_range("R",R,0.0,1.0)
        except ValueError as e:
            raise SampleError("R[%d]: %s" % (i,e))
        layers.append(Layer(float(R) if amplitude else math.sqrt(R),t))
    return LayerStack(tuple(layers))

def paper_two_layer(delay=20.1):
    """
        Gold-coated 2 mm glass slide: R = 36% (front), 95% (back)
    """
    return LayerStack.two_layer(math.sqrt(0.36),math.sqrt(0.95),delay)

def si_three_layer(delays=(0.0,6.2,20.1)):
    """
        Two glass slips with an air gap: r = 0.6, 0.04, 0.97
    """
    return LayerStack.from_pairs(zip((0.6,0.04,0.97),delays))

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
