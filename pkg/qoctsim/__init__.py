# -*- coding: utf-8 -*-

"""

qoctsim
-------

Simulation of quantum optical coherence tomography (QOCT) with
electro-optically modulated photon pairs.

A QOCT interferogram of a layered sample shows one Hong-Ou-Mandel dip
per reflecting interface and, between every pair of interfaces, an
artifact at the midpoint delay. Phase-modulating the two photons
(modulation index beta, drive frequency Omega, phase theta per arm)
spreads the biphoton spectrum over a network of Bessel-weighted
sidebands, which leaves the dips untouched but reshapes, cancels or
inverts the artifacts.

The library provides:

 * Integer-order Bessel functions and truncation of the sideband
   network to a weight tolerance (qoctsim.specfun, qoctsim.biphoton)

 * The sample model: reflection coefficients and round-trip delays,
   directly or from slab thicknesses and indices (qoctsim.sample)

 * A closed-form coincidence engine for any number of layers, with the
   full sideband double sum or its diagonal restriction, and the
   normalisation G0 in closed form or by 2-D quadrature
   (qoctsim.engine)

 * A brute-force quadrature oracle for the coincidence integral used to
   validate the engine (qoctsim.oracle)

 * Artifact-amplitude sweeps, artifact-null frequency search and model
   fitting (qoctsim.sweeps, qoctsim.fit)

 * The `qoct-sim` command line with TOML configs, bundled presets and
   CSV/JSON results (qoctsim.config, qoctsim.results, qoctsim.cli)

Units are rad/ps for frequencies, ps for delays and radians for phases
throughout the library; configs accept GHz, nm and degrees.

Example
-------

Two interfaces 6 ps apart (r = 0.6, 0.97) with the carrier phase set so
that the unmodulated artifact is a peak:

    >>> stack = LayerStack.two_layer(0.6,0.97,6.0)
    >>> spectrum = BiphotonSpectrum(sigma_a=2.0,sigma_d=0.5,
    ...                             carrier=CarrierPhase.explicit(math.pi))
    >>> off = Scenario(spectrum,stack,g0_method='closed')
    >>> ifg = off.interferogram([0.0,3.0,6.0])
    >>> g = ifg.gamma.tolist()
    >>> g[0] < 1, g[1] > 1, g[2] < 1
    (True, True, True)

Modulating both arms at 0.5 rad/ps with beta = 0.5 shrinks the artifact
peak:

    >>> mod = ModulationSettings(beta=0.5,omega_rf=0.5)
    >>> on = off.replace(mod1=mod,mod2=mod)
    >>> off.artifact_amplitude() > on.artifact_amplitude() > 0
    True

Command line
------------

    qoct-sim interferogram --config paper-2mm --out results/
    qoct-sim sweep --config paper-2mm
    qoct-sim null-search --config paper-2mm
    qoct-sim fit --config my-run.toml
    qoct-sim validate --config desk-oracle

`--config` takes a TOML file or the name of a bundled preset
(paper-2mm, paper-si-3layer, desk-oracle). `--mode diagonal` selects
the diagonal sideband sum, `--threads N` (or QOCT_SIM_THREADS) the
sweep worker count and `--log` the log hooks
(config,network,progress,result,error,data).

Outputs (all with manifest.json):

 * interferogram - interferogram.csv (tau_ps,gamma) and counts.csv
   (tau_ps,coincidences) when [output] n0 is set
 * sweep - sweep.csv (x,artifact_amplitude) in config units
 * null-search - null_search.json
 * fit - fit.json
 * validate - validate.json (exit status 2 if the engine and oracle
   disagree by more than the tolerance)

Changelog:
----------

 *   0.1.0   2026-10-18  First public release

License:
--------

BSD

"""

import math

version = "0.1.0"

from qoctsim.biphoton import (BiphotonSpectrum,CarrierPhase,ModulationSettings,
                              build_sideband_network,jsa_pm)
from qoctsim.engine import (MODE,Interferogram,Scenario,artifact_amplitude,
                            calibrate_peak_phase,g0,g_cross_multilayer,interferogram)
from qoctsim.sample import LayerStack,from_physical_stack

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
