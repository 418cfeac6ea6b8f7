#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
    Closed-form engine: per-term sums, mode equivalences, G0 and the
    Bessel-function behaviour of the artifact at the midpoint
"""

import math,unittest

import numpy as np
from scipy import special

from qoctsim.biphoton import (BiphotonSpectrum,CarrierPhase,ModulationSettings,
                              build_sideband_network,ghz_to_rad_per_ps,sigma_a_from_filter)
from qoctsim.engine import (MODE,EngineError,Interferogram,Scenario,artifact_amplitude,
                            calibrate_peak_phase,carrier_response,g0,g0_closed,g0_quadrature,
                            g_cross,g_cross_diagonal,g_cross_multilayer,g_cross_two_layer,
                            interferogram,kappa,pair_terms)
from qoctsim.sample import LayerStack,si_three_layer
from qoctsim.specfun import gaussian_overlap

DESK = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5,carrier=CarrierPhase.explicit(math.pi))
DESK_STACK = LayerStack.two_layer(0.6,0.97,6.0)

# Broadband source with a narrow pump: sidebands 12.7 GHz apart are
# fully resolved and the artifact follows Bessel-function laws
WIDE = BiphotonSpectrum(sigma_a=sigma_a_from_filter(800.0,40.0),sigma_d=1e-3,
                        carrier=CarrierPhase.explicit(math.pi))
WIDE_STACK = LayerStack.two_layer(0.6,0.9747,20.1)
OMEGA = ghz_to_rad_per_ps(12.7)
S = math.sin(OMEGA * 20.1 / 4.0)

def per_term_g(spectrum,network,stack,tau):
    """
        Cross term summed one sideband pair at a time
    """
    phases = spectrum.layer_phases(stack.delays)
    sa,sd = spectrum.sigma_a,spectrum.sigma_d
    total = []
    for t in pair_terms(network):
        w = (t.lambda_product *
             float(gaussian_overlap(t.delta_plus - t.delta_plus_prime,sd)) *
             float(gaussian_overlap(t.delta_minus + t.delta_minus_prime,sa)))
        if w == 0:
            continue
        inner = [l.r * l.r * kappa(t,sa,l.delay,tau) for l in stack.layers]
        for j,k in stack.pairs():
            lj,lk = stack.layers[j],stack.layers[k]
            d = lk.delay - lj.delay
            inner.append(2.0 * lj.r * lk.r * math.exp(-sd * sd * d * d / 32.0) *
                         math.cos(phases[k] - phases[j] + (t.delta_plus + t.delta_plus_prime) * d / 4.0) *
                         kappa(t,sa,(lj.delay + lk.delay) / 2.0,tau))
        total.append(w * math.fsum(inner))
    return 2.0 * math.fsum(total)

class TestPairSums(unittest.TestCase):

    def setUp(self):
        m1 = ModulationSettings(beta=0.4,omega_rf=0.5)
        m2 = ModulationSettings(beta=0.3,omega_rf=0.7,theta=1.0)
        self.network = build_sideband_network(m1,m2)

    def test_per_term(self):
        for tau in (0.0,1.7,3.0,4.4,6.0):
            self.assertAlmostEqual(g_cross_multilayer(DESK,self.network,DESK_STACK,tau),
                                   per_term_g(DESK,self.network,DESK_STACK,tau),places=10)

    def test_per_term_three_layers(self):
        stack = LayerStack.from_pairs([(0.6,0.0),(0.3,2.5),(0.9,7.0)])
        s = DESK.with_carrier(CarrierPhase.per_layer((0.0,0.7,2.9)))
        for tau in (1.25,3.5,4.75):
            self.assertAlmostEqual(g_cross_multilayer(s,self.network,stack,tau),
                                   per_term_g(s,self.network,stack,tau),places=10)

    def test_two_layer_is_multilayer(self):
        taus = np.linspace(-1.0,7.0,9)
        a = g_cross_two_layer(DESK,self.network,DESK_STACK,taus)
        b = g_cross_multilayer(DESK,self.network,DESK_STACK,taus)
        self.assertLess(float(np.max(np.abs(a - b))),1e-12)

    def test_diagonal_mode(self):
        taus = np.linspace(-1.0,7.0,9)
        a = g_cross_diagonal(DESK,self.network,DESK_STACK,taus)
        b = g_cross(DESK,self.network,DESK_STACK,taus,MODE.diagonal)
        self.assertLess(float(np.max(np.abs(a - b))),1e-12)
        with self.assertRaises(EngineError):
            g_cross_diagonal(DESK,self.network,si_three_layer(),3.1)
        with self.assertRaises(EngineError):
            g_cross_two_layer(DESK,self.network,si_three_layer(),3.1)

    def test_grouped_matches_pointwise(self):
        taus = np.linspace(-2.0,8.0,41)
        grouped = g_cross(DESK,self.network,DESK_STACK,taus)
        pointwise = np.array([g_cross(DESK,self.network,DESK_STACK,t) for t in taus.tolist()])
        self.assertLess(float(np.max(np.abs(grouped - pointwise))),1e-12)

    def test_symmetric_stack(self):
        # Equal reflections, no modulation: G is symmetric about T/2
        s = DESK.with_carrier(CarrierPhase.explicit(0.9))
        net = build_sideband_network(ModulationSettings(),ModulationSettings())
        stack = LayerStack.two_layer(0.8,0.8,6.0)
        for tau in (1.0,2.0,2.9):
            self.assertAlmostEqual(g_cross(s,net,stack,tau),g_cross(s,net,stack,6.0 - tau),places=14)

class TestG0(unittest.TestCase):

    def test_closed_matches_quadrature(self):
        for beta1,beta2,theta2 in ((0.0,0.0,0.0),(1.2,1.2,0.0),(1.2,0.8,1.5)):
            m1 = ModulationSettings(beta=beta1,omega_rf=0.5)
            m2 = ModulationSettings(beta=beta2,omega_rf=0.5,theta=theta2)
            net = build_sideband_network(m1,m2)
            for phi in (0.0,math.pi):
                s = DESK.with_carrier(CarrierPhase.explicit(phi))
                closed = g0_closed(s,net,DESK_STACK)
                quad = g0_quadrature(s,net,DESK_STACK)
                self.assertLess(abs(closed - quad),1e-6 * quad,
                                msg="beta=(%s,%s) theta2=%s phi=%s" % (beta1,beta2,theta2,phi))

    def test_mirror(self):
        net = build_sideband_network(ModulationSettings(beta=1.0,omega_rf=0.5),ModulationSettings())
        self.assertAlmostEqual(g0(DESK,net,LayerStack.single(),'closed'),2.0,places=8)

    def test_auto_picks_closed_for_wide_spectra(self):
        net = build_sideband_network(ModulationSettings(),ModulationSettings())
        value = g0(WIDE,net,WIDE_STACK)
        self.assertAlmostEqual(value,2.0 * (0.36 + 0.9747 ** 2),places=9)

    def test_unknown_method(self):
        net = build_sideband_network(ModulationSettings(),ModulationSettings())
        with self.assertRaises(EngineError):
            g0(DESK,net,DESK_STACK,'exact')

class TestInterferogram(unittest.TestCase):

    def test_desk_shape(self):
        ifg = Scenario(DESK,DESK_STACK,g0_method='closed').interferogram([0.0,3.0,6.0,15.0])
        g = ifg.gamma.tolist()
        self.assertLess(g[0],1.0)
        self.assertGreater(g[1],1.0)
        self.assertLess(g[2],g[0])
        self.assertAlmostEqual(g[3],1.0,places=12)
        self.assertEqual(ifg.mode,MODE.full)

    def test_dips_and_artifacts(self):
        stack = si_three_layer()
        s = WIDE.with_carrier(CarrierPhase.per_layer((0.0,1.2,math.pi)))
        net = build_sideband_network(ModulationSettings(),ModulationSettings())
        taus = sorted(stack.delays + tuple(stack.midpoints()))
        ifg = interferogram(s,net,stack,taus,g0_method='closed')
        gamma = dict(zip(taus,ifg.gamma.tolist()))
        for t in stack.delays:
            self.assertLess(gamma[t],1.0)
        for t in stack.midpoints():
            self.assertGreater(abs(gamma[t] - 1.0),1e-6)
        self.assertAlmostEqual(float(interferogram(s,net,stack,[1.5],g0_method='closed').gamma[0]),
                               1.0,places=12)

    def test_dips_unchanged_by_modulation(self):
        # Full drive at 12.7 GHz leaves the dip visibilities alone
        off = Scenario(WIDE,WIDE_STACK,g0_method='closed',epsilon=1e-6)
        on = off.replace(mod1=ModulationSettings(5.42,OMEGA),mod2=ModulationSettings(4.48,OMEGA))
        a = off.interferogram([0.0,20.1]).gamma
        b = on.interferogram([0.0,20.1]).gamma
        self.assertLess(float(np.max(np.abs(a - b))),0.01)

    def test_counts(self):
        ifg = Scenario(DESK,DESK_STACK,g0_method='closed').interferogram([0.0,15.0])
        counts = ifg.counts(4000.0).tolist()
        self.assertAlmostEqual(counts[1],1000.0 * ifg.g0,places=9)
        self.assertLess(counts[0],counts[1])

    def test_bad_grid(self):
        sc = Scenario(DESK,DESK_STACK,g0_method='closed')
        for grid in ([],[1.0,1.0],[2.0,1.0],[0.0,float('nan')],[[0.0,1.0]]):
            with self.assertRaises(EngineError,msg=repr(grid)):
                sc.interferogram(grid)

    def test_interferogram_checks(self):
        with self.assertRaises(EngineError):
            Interferogram(np.zeros(2),np.zeros(3),1.0)
        with self.assertRaises(EngineError):
            Interferogram(np.zeros(2),np.zeros(2),0.0)

class TestArtifact(unittest.TestCase):

    def amplitude(self,mod1,mod2,mode=MODE.full):
        net = build_sideband_network(mod1,mod2)
        return artifact_amplitude(WIDE,net,WIDE_STACK,mode,'closed')

    def test_unmodulated(self):
        a0 = self.amplitude(ModulationSettings(),ModulationSettings())
        # 4.r1.r2.exp(-sd^2 T^2/32) over 2(r1^2 + r2^2)
        expected = 4.0 * 0.6 * 0.9747 * math.exp(-1e-6 * 20.1 ** 2 / 32.0) / (2.0 * (0.36 + 0.9747 ** 2))
        self.assertAlmostEqual(a0,expected,places=9)

    def test_equal_drives(self):
        a0 = self.amplitude(ModulationSettings(),ModulationSettings())
        for beta in (0.5,1.0,1.5):
            m = ModulationSettings(beta=beta,omega_rf=OMEGA)
            ratio = self.amplitude(m,m) / a0
            self.assertAlmostEqual(ratio,float(special.j0(4.0 * beta * S)),delta=1e-3)

    def test_counter_phased_drives_cancel(self):
        a0 = self.amplitude(ModulationSettings(),ModulationSettings())
        m1 = ModulationSettings(beta=1.0,omega_rf=OMEGA)
        m2 = ModulationSettings(beta=1.0,omega_rf=OMEGA,theta=math.pi)
        self.assertAlmostEqual(self.amplitude(m1,m2) / a0,1.0,delta=1e-3)

    def test_single_arm_diagonal(self):
        a0 = self.amplitude(ModulationSettings(),ModulationSettings())
        m = ModulationSettings(beta=2.0,omega_rf=OMEGA)
        full = self.amplitude(m,ModulationSettings())
        diagonal = self.amplitude(m,ModulationSettings(),MODE.diagonal)
        self.assertAlmostEqual(full,diagonal,delta=1e-6)
        self.assertAlmostEqual(full / a0,float(special.j0(2.0 * 2.0 * S)),delta=1e-3)

    def test_incommensurate_diagonal(self):
        a0 = self.amplitude(ModulationSettings(),ModulationSettings())
        w2 = 1.37 * OMEGA
        s2 = math.sin(w2 * 20.1 / 4.0)
        m1 = ModulationSettings(beta=1.0,omega_rf=OMEGA)
        m2 = ModulationSettings(beta=0.8,omega_rf=w2)
        full = self.amplitude(m1,m2)
        diagonal = self.amplitude(m1,m2,MODE.diagonal)
        expected = float(special.j0(2.0 * 1.0 * S) * special.j0(2.0 * 0.8 * s2))
        self.assertAlmostEqual(full / a0,expected,delta=1e-3)
        self.assertAlmostEqual(diagonal / a0,expected,delta=1e-3)

    def test_carrier_sign(self):
        net = build_sideband_network(ModulationSettings(),ModulationSettings())
        peak = artifact_amplitude(DESK,net,DESK_STACK,g0_method='closed')
        dip = artifact_amplitude(DESK.with_carrier(CarrierPhase.explicit(0.0)),net,DESK_STACK,
                                 g0_method='closed')
        self.assertGreater(peak,0)
        self.assertLess(dip,0)

    def test_needs_two_layers(self):
        net = build_sideband_network(ModulationSettings(),ModulationSettings())
        with self.assertRaises(EngineError):
            artifact_amplitude(DESK,net,si_three_layer())

class TestCarrier(unittest.TestCase):

    def test_calibration(self):
        phi = calibrate_peak_phase(WIDE,WIDE_STACK)
        self.assertAlmostEqual(phi,math.pi,places=4)
        self.assertEqual(calibrate_peak_phase(WIDE,LayerStack.single()),0.0)

    def test_calibration_desk(self):
        phi = calibrate_peak_phase(DESK,DESK_STACK)
        best = Scenario(DESK.with_carrier(CarrierPhase.explicit(phi)),DESK_STACK,g0_method='closed')
        for other in (phi - 0.1,phi + 0.1,0.0):
            s = Scenario(DESK.with_carrier(CarrierPhase.explicit(other)),DESK_STACK,g0_method='closed')
            self.assertGreaterEqual(best.artifact_amplitude(),s.artifact_amplitude())

    def test_response(self):
        m1 = ModulationSettings(beta=1.2,omega_rf=0.5)
        m2 = ModulationSettings(beta=0.9,omega_rf=0.5,theta=0.4)
        base = Scenario(DESK,DESK_STACK,m1,m2,g0_method='closed')
        r = base.carrier_response()
        for phi in (0.3,2.2,4.0):
            s = base.replace(spectrum=DESK.with_carrier(CarrierPhase.explicit(phi)))
            self.assertAlmostEqual(r.amplitude(phi),s.artifact_amplitude(),places=10)

    def test_response_diagonal(self):
        m = ModulationSettings(beta=1.2,omega_rf=0.5)
        base = Scenario(DESK,DESK_STACK,m,m,MODE.diagonal,g0_method='closed')
        r = base.carrier_response()
        s = base.replace(spectrum=DESK.with_carrier(CarrierPhase.explicit(1.0)))
        self.assertAlmostEqual(r.amplitude(1.0),s.artifact_amplitude(),places=10)

    def test_response_needs_two_layers(self):
        net = build_sideband_network(ModulationSettings(),ModulationSettings())
        with self.assertRaises(EngineError):
            carrier_response(DESK,net,LayerStack.single())

class TestScenario(unittest.TestCase):

    def test_mode_names(self):
        self.assertEqual(Scenario(DESK,DESK_STACK,mode='diagonal').mode,MODE.diagonal)
        with self.assertRaises(EngineError):
            Scenario(DESK,DESK_STACK,mode='partial')
        with self.assertRaises(EngineError):
            Scenario(DESK,DESK_STACK,g0_method='guess')

    def test_types(self):
        with self.assertRaises(ValueError):
            Scenario(None,DESK_STACK)
        with self.assertRaises(ValueError):
            Scenario(DESK,[(0.6,0.0)])

    def test_network_cached(self):
        sc = Scenario(DESK,DESK_STACK,ModulationSettings(beta=1.0,omega_rf=0.5))
        self.assertIs(sc.network,sc.network)
        self.assertEqual(len(sc.replace(mod1=ModulationSettings()).network),1)

if __name__ == '__main__':
    unittest.main()
