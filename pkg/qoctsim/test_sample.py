#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
    Layer stacks and the sample transfer function
"""

import cmath,math,unittest

import numpy as np

from qoctsim.biphoton import C_MM_PER_PS
from qoctsim.sample import (Layer,LayerStack,SampleError,from_physical_stack,paper_two_layer,
                            si_three_layer,transfer)

class TestLayerStack(unittest.TestCase):

    def test_pairs_and_midpoints(self):
        s = si_three_layer()
        self.assertEqual(s.pairs(),[(0,1),(0,2),(1,2)])
        self.assertEqual([round(m,6) for m in s.midpoints()],[3.1,10.05,13.15])
        self.assertEqual(s.span,20.1)

    def test_paper_stack(self):
        s = paper_two_layer()
        self.assertEqual(s.delays,(0.0,20.1))
        self.assertAlmostEqual(s.reflections[0],0.6,places=15)
        self.assertAlmostEqual(s.reflections[1] ** 2,0.95,places=15)

    def test_invalid(self):
        for pairs in ([],[(0.5,1.0)],[(0.5,0.0),(0.5,0.0)],[(0.5,0.0),(0.2,5.0),(0.3,4.0)],
                      [(1.5,0.0)],[(0.5,0.0),(-0.1,2.0)]):
            with self.assertRaises(SampleError,msg=repr(pairs)):
                LayerStack.from_pairs(pairs)

    def test_not_tuple(self):
        with self.assertRaises(ValueError):
            LayerStack([Layer(1.0,0.0)])

class TestTransfer(unittest.TestCase):

    def test_sum(self):
        s = LayerStack.from_pairs([(0.6,0.0),(0.97,6.0)])
        nu = 0.37
        expected = 0.6 + 0.97 * cmath.exp(1j * nu * 6.0)
        self.assertAlmostEqual(transfer(s,nu),expected,places=15)

    def test_phases(self):
        s = LayerStack.from_pairs([(0.6,0.0),(0.97,6.0)])
        h = transfer(s,0.0,(0.0,math.pi))
        self.assertAlmostEqual(h.real,0.6 - 0.97,places=15)
        with self.assertRaises(SampleError):
            transfer(s,0.0,(0.0,))

    def test_array(self):
        s = si_three_layer()
        nu = np.linspace(-1.0,1.0,5)
        h = transfer(s,nu)
        self.assertEqual(h.shape,(5,))
        self.assertAlmostEqual(complex(h[2]),complex(0.6 + 0.04 + 0.97),places=15)

    def test_period(self):
        # |H|^2 of two layers repeats every 2pi/T
        s = LayerStack.two_layer(0.6,0.97,6.0)
        a = abs(transfer(s,0.2)) ** 2
        b = abs(transfer(s,0.2 + 2.0 * math.pi / 6.0)) ** 2
        self.assertAlmostEqual(a,b,places=12)

class TestPhysicalStack(unittest.TestCase):

    def test_delays(self):
        s = from_physical_stack([1.0,0.5],[1.5,1.0],[0.04,0.04,0.9])
        self.assertAlmostEqual(s.delays[1],3.0 / C_MM_PER_PS,places=12)
        self.assertAlmostEqual(s.delays[2],4.0 / C_MM_PER_PS,places=12)
        self.assertAlmostEqual(s.reflections[0],0.2,places=15)

    def test_amplitude(self):
        s = from_physical_stack([2.0],[1.5],[0.6,0.97],amplitude=True)
        self.assertEqual(s.reflections,(0.6,0.97))

    def test_mismatch(self):
        with self.assertRaises(SampleError):
            from_physical_stack([1.0],[1.5,1.2],[0.1,0.1])
        with self.assertRaises(SampleError):
            from_physical_stack([1.0],[1.5],[0.1])
        with self.assertRaises(SampleError):
            from_physical_stack([1.0],[0.9],[0.1,0.1])
        with self.assertRaises(SampleError):
            from_physical_stack([1.0],[1.5],[0.1,1.1])

if __name__ == '__main__':
    unittest.main()
