#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
    Engine against the brute-force oracle in the desk regime
"""

import math,unittest

import numpy as np

from qoctsim.biphoton import BiphotonSpectrum,CarrierPhase,ModulationSettings
from qoctsim.engine import Scenario
from qoctsim.oracle import (OracleResolutionError,c_tau_oracle,oracle_grid_points,
                            oracle_interferogram,swap_consistency_check)
from qoctsim.quadrature import QuadratureGrid,SCHEME
from qoctsim.sample import LayerStack

DESK = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5)
STACK = LayerStack.two_layer(0.6,0.97,6.0)
TAUS = [-1.0,0.0,1.5,3.0,4.5,6.0,7.0]
TOLERANCE = 1e-3

def engine_gamma(spectrum,mod1,mod2,stack,taus):
    return Scenario(spectrum,stack,mod1,mod2).interferogram(taus).gamma

class TestOracle(unittest.TestCase):

    def check(self,spectrum,mod1,mod2,stack=STACK,taus=TAUS):
        oracle = oracle_interferogram(spectrum,mod1,mod2,stack,taus)
        engine = engine_gamma(spectrum,mod1,mod2,stack,taus)
        err = float(np.max(np.abs(engine - oracle.gamma)))
        self.assertLess(err,TOLERANCE)
        return oracle

    def test_unmodulated(self):
        off = ModulationSettings()
        for phi in (0.0,math.pi):
            self.check(DESK.with_carrier(CarrierPhase.explicit(phi)),off,off)

    def test_modulated(self):
        m1 = ModulationSettings(beta=1.2,omega_rf=0.5)
        for theta2 in (0.0,math.pi / 2,math.pi):
            m2 = ModulationSettings(beta=1.2,omega_rf=0.5,theta=theta2)
            self.check(DESK.with_carrier(CarrierPhase.explicit(math.pi)),m1,m2)

    def test_unequal_arms(self):
        m1 = ModulationSettings(beta=0.9,omega_rf=0.5)
        m2 = ModulationSettings(beta=0.5,omega_rf=0.7,theta=1.0)
        self.check(DESK.with_carrier(CarrierPhase.explicit(2.0)),m1,m2)

    def test_three_layers(self):
        stack = LayerStack.from_pairs([(0.6,0.0),(0.3,2.5),(0.9,7.0)])
        s = DESK.with_carrier(CarrierPhase.per_layer((0.0,0.7,2.9)))
        m = ModulationSettings(beta=0.8,omega_rf=0.5)
        self.check(s,m,m,stack,[0.0,1.25,2.5,3.5,4.75,7.0])

    def test_split(self):
        m = ModulationSettings(beta=1.2,omega_rf=0.5)
        r = c_tau_oracle(DESK.with_carrier(CarrierPhase.explicit(math.pi)),m,m,STACK,3.0)
        self.assertAlmostEqual(r.c,r.g0 - r.g,delta=1e-9 * r.g0)
        self.assertGreaterEqual(r.c,0.0)

    def test_far_from_sample(self):
        off = ModulationSettings()
        r = c_tau_oracle(DESK,off,off,STACK,20.0)
        self.assertLess(abs(r.g),1e-9)
        self.assertAlmostEqual(r.c,r.g0,places=9)

    def test_trapezoid(self):
        off = ModulationSettings()
        grid = QuadratureGrid(scheme=SCHEME.trapezoid)
        a = oracle_interferogram(DESK,off,off,STACK,[0.0,3.0],grid)
        b = oracle_interferogram(DESK,off,off,STACK,[0.0,3.0])
        self.assertLess(float(np.max(np.abs(a.gamma - b.gamma))),1e-6)

    def test_resolution(self):
        off = ModulationSettings()
        with self.assertRaises(OracleResolutionError):
            oracle_interferogram(DESK,off,off,STACK,[0.0,40.0],QuadratureGrid(points_per_axis=129))

    def test_grid_points(self):
        off = ModulationSettings()
        n = oracle_grid_points(DESK,off,off,STACK,TAUS)
        self.assertEqual(n % 2,1)
        self.assertGreater(n,2 * 64)

    def test_swap(self):
        m1 = ModulationSettings(beta=2.0,omega_rf=0.3,theta=0.5)
        m2 = ModulationSettings(beta=0.7,omega_rf=0.8)
        rng = np.random.default_rng(1)
        samples = rng.uniform(-4.0,4.0,(50,2))
        self.assertLess(swap_consistency_check(DESK,m1,m2,samples),1e-12)

if __name__ == '__main__':
    unittest.main()
