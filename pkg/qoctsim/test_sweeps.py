#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
    Artifact sweeps and the null-frequency search
"""

import math,unittest

import numpy as np
from scipy import special

from qoctsim.biphoton import (BiphotonSpectrum,CarrierPhase,ModulationSettings,
                              ghz_to_rad_per_ps,rad_per_ps_to_ghz,sigma_a_from_filter)
from qoctsim.config import load_config
from qoctsim.engine import MODE,EngineError,Scenario,calibrate_peak_phase
from qoctsim.log import SimLogger
from qoctsim.sample import LayerStack,si_three_layer
from qoctsim.sweeps import (NO_NULL,VARIABLE,NullSearchError,SweepError,SweepSpec,
                            apply_variable,carrier_phase_of,find_null_frequency,locate_null,
                            null_sensitivity,run_sweep,scan_for_brackets)

SIGMA_A = sigma_a_from_filter(800.0,40.0)
STACK = LayerStack.two_layer(0.6,0.9747,20.1)
OMEGA = ghz_to_rad_per_ps(12.7)
S = math.sin(OMEGA * 20.1 / 4.0)
J0_ZERO = 2.404825557695773

def scenario(sigma_d,mod1=ModulationSettings(),mod2=ModulationSettings(),**kwargs):
    spectrum = BiphotonSpectrum(SIGMA_A,sigma_d)
    phi = calibrate_peak_phase(spectrum,STACK)
    return Scenario(spectrum.with_carrier(CarrierPhase.explicit(phi)),STACK,mod1,mod2,
                    g0_method='closed',**kwargs)

def first_zero(points):
    """
        Linear interpolation of the first sign change
    """
    for a,b in zip(points,points[1:]):
        if a.artifact_amplitude * b.artifact_amplitude <= 0:
            return a.x - a.artifact_amplitude * (b.x - a.x) / (b.artifact_amplitude - a.artifact_amplitude)
    return None

def sign_changes(points):
    signs = np.sign([p.artifact_amplitude for p in points])
    return int(np.count_nonzero(signs[1:] * signs[:-1] < 0))

class TestSweep(unittest.TestCase):

    def test_peak_to_dip(self):
        # Equal in-phase drives: artifact ~ J0(4.beta.sin(Omega.T/4))
        m = ModulationSettings(omega_rf=OMEGA)
        spec = SweepSpec(VARIABLE.beta_both,0.0,2.2,23,scenario(0.01,m,m))
        points = run_sweep(spec,threads=2)
        self.assertEqual([round(p.x,9) for p in points],[round(0.1 * i,9) for i in range(23)])
        amplitudes = [p.artifact_amplitude for p in points]
        self.assertGreater(amplitudes[0],0)
        self.assertLess(amplitudes[-1],0)
        for a,b in zip(amplitudes,amplitudes[1:]):
            self.assertLessEqual(b,a + 1e-12)
        self.assertEqual(sign_changes(points),1)
        self.assertAlmostEqual(first_zero(points),J0_ZERO / (4.0 * S),delta=0.02 * J0_ZERO / (4.0 * S))

    def test_two_inversions(self):
        # Over beta in [0,5.4] the equal-drive artifact follows J0(4.beta.S)
        # and crosses zero twice (4S.5.4 < 8.654), which is why the peak to
        # dip sweeps above stop at the first zero
        m = ModulationSettings(omega_rf=OMEGA)
        spec = SweepSpec(VARIABLE.beta_both,0.0,5.4,19,scenario(0.01,m,m,epsilon=1e-6))
        points = run_sweep(spec,threads=2)
        self.assertEqual(sign_changes(points),2)
        self.assertGreater(points[0].artifact_amplitude,0)
        self.assertGreater(points[-1].artifact_amplitude,0)

    def test_diagonal_never_inverts(self):
        # The diagonal sum gives J0(2.beta.s)^2 for equal drives
        m = ModulationSettings(omega_rf=OMEGA)
        spec = SweepSpec(VARIABLE.beta_both,0.0,2.2,12,scenario(0.01,m,m,mode=MODE.diagonal))
        points = run_sweep(spec)
        self.assertEqual(sign_changes(points),0)
        a0 = points[0].artifact_amplitude
        for p in points:
            expected = float(special.j0(2.0 * p.x * S)) ** 2
            self.assertAlmostEqual(p.artifact_amplitude / a0,expected,delta=1e-3)

    def test_single_arm_zero(self):
        # One modulated arm: both modes follow J0(2.beta.sin(Omega.T/4))
        m = ModulationSettings(omega_rf=OMEGA)
        expected = J0_ZERO / (2.0 * S)
        for mode in (MODE.full,MODE.diagonal):
            spec = SweepSpec(VARIABLE.beta_arm1,2.6,3.6,11,scenario(0.01,m,mode=mode))
            points = run_sweep(spec)
            self.assertEqual(sign_changes(points),1)
            self.assertAlmostEqual(first_zero(points),expected,delta=0.02 * expected)

    def test_full_drive(self):
        # beta = (5.42,4.48) at 12.7 GHz: J0(7.73) > 0, no inversion
        base = scenario(0.01,epsilon=1e-6)
        a0 = base.artifact_amplitude()
        s = base.replace(mod1=ModulationSettings(5.42,OMEGA),mod2=ModulationSettings(4.48,OMEGA))
        ratio = s.artifact_amplitude() / a0
        self.assertGreater(ratio,0)
        self.assertAlmostEqual(ratio,float(special.j0(2.0 * (5.42 + 4.48) * S)),delta=1e-2)

    def test_phase_difference(self):
        m = ModulationSettings(beta=1.0,omega_rf=OMEGA)
        spec = SweepSpec(VARIABLE.phase_difference,0.0,math.pi,3,scenario(0.01,m,m))
        points = run_sweep(spec)
        a0 = scenario(0.01).artifact_amplitude()
        # beta_eff = |1 + exp(i.dtheta)|
        for p in points:
            beta_eff = abs(1.0 + complex(math.cos(p.x),math.sin(p.x)))
            self.assertAlmostEqual(p.artifact_amplitude / a0,
                                   float(special.j0(2.0 * beta_eff * S)),delta=1e-3)

    def test_phase_symmetry(self):
        # A(pi - x) = A(pi + x) for equal drives
        m = ModulationSettings(beta=1.0,omega_rf=OMEGA)
        base = scenario(0.01,m,m)
        for x in (0.3,0.7,1.9):
            a = apply_variable(base,VARIABLE.phase_difference,math.pi - x).artifact_amplitude()
            b = apply_variable(base,VARIABLE.phase_difference,math.pi + x).artifact_amplitude()
            self.assertAlmostEqual(a,b,delta=1e-9)

    def test_progress(self):
        lines = []
        logger = SimLogger("progress",prefix=False,logf=lines.append)
        spec = SweepSpec(VARIABLE.beta_arm2,0.0,0.5,3,scenario(0.01,ModulationSettings(),
                                                               ModulationSettings(omega_rf=OMEGA)))
        run_sweep(spec,logger=logger)
        self.assertEqual(lines[-1],"Progress: sweep 3/3")

    def test_apply_variable(self):
        base = scenario(0.01,ModulationSettings(1.0,OMEGA,0.5),ModulationSettings(0.5,OMEGA))
        s = apply_variable(base,VARIABLE.phase_difference,1.0)
        self.assertAlmostEqual(s.mod2.theta,1.5,places=15)
        s = apply_variable(base,VARIABLE.frequency_both,0.2)
        self.assertEqual((s.mod1.omega_rf,s.mod2.omega_rf),(0.2,0.2))
        s = apply_variable(base,VARIABLE.beta_arm2,2.0)
        self.assertEqual((s.mod1.beta,s.mod2.beta),(1.0,2.0))
        with self.assertRaises(SweepError):
            apply_variable(base,9,1.0)

    def test_spec_errors(self):
        base = scenario(0.01)
        for args in ((VARIABLE.beta_both,0.0,1.0,1),(VARIABLE.beta_both,-1.0,1.0,5),
                     (VARIABLE.phase_difference,0.0,7.0,5),('gain',0.0,1.0,5),
                     (VARIABLE.beta_both,1.0,1.0,5)):
            with self.assertRaises(SweepError,msg=repr(args)):
                SweepSpec(*args,scenario=base)
        with self.assertRaises(SweepError):
            SweepSpec(VARIABLE.beta_both,0.0,1.0,5,None)
        self.assertEqual(SweepSpec('beta_arm1',0.0,1.0,2,base).variable,VARIABLE.beta_arm1)

    def test_artifact_needs_two_layers(self):
        base = Scenario(BiphotonSpectrum(SIGMA_A,0.01),si_three_layer(),g0_method='closed')
        spec = SweepSpec(VARIABLE.beta_both,0.0,1.0,2,base)
        with self.assertRaises(EngineError):
            run_sweep(spec)

class TestNull(unittest.TestCase):

    def setUp(self):
        m = ModulationSettings(beta=1.0)
        self.base = scenario(1e-3,m,m)
        # 4.beta.sin(Omega.T/4) = first zero of J0
        self.expected = 4.0 * math.asin(J0_ZERO / 4.0) / 20.1

    def test_find(self):
        lo,hi = ghz_to_rad_per_ps(1.0),ghz_to_rad_per_ps(30.0)
        r = find_null_frequency(self.base,lo,hi)
        self.assertIsNot(r,NO_NULL)
        self.assertAlmostEqual(r.omega,self.expected,delta=0.01 * self.expected)
        self.assertLess(abs(r.amplitude),1e-4 * abs(r.amplitude_lo))
        self.assertEqual(r.bracket,(lo,hi))
        self.assertLessEqual(r.iterations,60)
        self.assertAlmostEqual(rad_per_ps_to_ghz(r.omega),20.44,delta=0.25)

    def test_no_null(self):
        r = find_null_frequency(self.base,ghz_to_rad_per_ps(1.0),ghz_to_rad_per_ps(10.0))
        self.assertIs(r,NO_NULL)
        self.assertFalse(r)
        self.assertEqual(repr(r),"NO_NULL")

    def test_scan(self):
        lo,hi = ghz_to_rad_per_ps(1.0),ghz_to_rad_per_ps(100.0)
        self.assertIs(find_null_frequency(self.base,lo,hi),NO_NULL)
        brackets = scan_for_brackets(self.base,lo,hi,40)
        self.assertEqual(len(brackets),2)
        first = locate_null(self.base,lo,hi,40)
        self.assertAlmostEqual(first.omega,self.expected,delta=0.01 * self.expected)
        second_expected = 4.0 * (math.pi - math.asin(J0_ZERO / 4.0)) / 20.1
        second = locate_null(self.base,lo,hi,40,near=second_expected)
        self.assertAlmostEqual(second.omega,second_expected,delta=0.02 * second_expected)
        self.assertIs(locate_null(self.base,lo,hi),NO_NULL)

    def test_sensitivity(self):
        # The carrier phase scales the artifact without moving the null
        lo,hi = ghz_to_rad_per_ps(1.0),ghz_to_rad_per_ps(30.0)
        r = find_null_frequency(self.base,lo,hi)
        s = null_sensitivity(self.base,lo,hi,r.omega,0.2)
        self.assertEqual(s.delta,0.2)
        self.assertIsNot(s.minus,NO_NULL)
        self.assertIsNot(s.plus,NO_NULL)
        self.assertLess(abs(s.derivative),1e-6)

    def test_carrier_phase_of(self):
        self.assertAlmostEqual(carrier_phase_of(self.base),math.pi,places=4)

    def test_full_drive_preset(self):
        # beta = (5.42,4.48) in phase: first zero where 2.(beta1+beta2).sin(Omega.T/4) = 2.405
        config = load_config("paper-2mm")
        settings = config.null_search
        lo,hi = ghz_to_rad_per_ps(settings.lo_ghz),ghz_to_rad_per_ps(settings.hi_ghz)
        r = locate_null(config.scenario,lo,hi,settings.scan_points)
        self.assertIsNot(r,NO_NULL)
        self.assertTrue(lo < r.omega < hi)
        a_lo = apply_variable(config.scenario,VARIABLE.frequency_both,lo).artifact_amplitude()
        self.assertLess(abs(r.amplitude),1e-4 * abs(a_lo))
        expected = 4.0 * math.asin(J0_ZERO / (2.0 * (5.42 + 4.48))) / 20.1
        self.assertAlmostEqual(r.omega,expected,delta=0.01 * expected)

    def test_errors(self):
        with self.assertRaises(ValueError):
            find_null_frequency(self.base,0.0,0.1)
        with self.assertRaises(SweepError):
            find_null_frequency(self.base,0.1,0.05)
        self.assertTrue(issubclass(NullSearchError,SweepError))

if __name__ == '__main__':
    unittest.main()
