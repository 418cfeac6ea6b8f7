# -*- coding: utf-8 -*-

"""
    qoct-sim command line

        qoct-sim <interferogram|sweep|null-search|fit|validate>
                 --config <path|preset> [--out <dir>] [--mode full|diagonal]
                 [--threads N] [--log hooks] [--log-prefix]

    Every command writes its result files and manifest.json to the
    output directory. Exit status is 0 on success, 1 on any error and 2
    when validation fails.
"""

import argparse
import logging
import os
import sys

import numpy as np

from qoctsim import version
from qoctsim.biphoton import BiphotonError,ghz_to_rad_per_ps,rad_per_ps_to_ghz
from qoctsim.config import ConfigError,load_config,preset_names
from qoctsim.engine import EngineError
from qoctsim.fit import FitError,FitProblem,fit,read_observations
from qoctsim.log import SimLogger
from qoctsim.oracle import OracleError,oracle_grid_points,oracle_interferogram
from qoctsim.quadrature import QuadratureError,SCHEME
from qoctsim.results import (COUNTS_HEADER,INTERFEROGRAM_HEADER,SWEEP_HEADER,ResultError,
                             ResultWriter,RunManifest)
from qoctsim.sample import SampleError
from qoctsim.specfun import SpecfunError
from qoctsim.sweeps import NO_NULL,VARIABLE,SweepError,locate_null,null_sensitivity,run_sweep

PROG = "qoct-sim"
THREADS_ENV = "QOCT_SIM_THREADS"
EXIT_OK,EXIT_ERROR,EXIT_VALIDATION = 0,1,2

ERRORS = (ConfigError,BiphotonError,SampleError,SpecfunError,EngineError,QuadratureError,
          OracleError,SweepError,FitError,ResultError,OSError,ValueError)

class ArgumentParser(argparse.ArgumentParser):

    """
        Usage errors exit with status 1 (2 means validation failure)
    """

    def error(self,message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR,"%s: error: %s\n" % (self.prog,message))

def _ghz(omega):
    return rad_per_ps_to_ghz(omega)

def command_interferogram(config,writer,logger,threads=1):
    scenario = config.scenario
    logger.log_network(scenario.network)
    ifg = scenario.interferogram(config.tau_grid(),config.digest)
    writer.csv("interferogram.csv",INTERFEROGRAM_HEADER,ifg.rows())
    if config.n0 is not None:
        writer.csv("counts.csv",COUNTS_HEADER,zip(ifg.tau_grid.tolist(),ifg.counts(config.n0).tolist()))
    i = int(np.argmin(ifg.gamma))
    logger.log_result("interferogram","%d points / G0 %.9g / min gamma %.6g at %.6g ps" % (
                        len(ifg.gamma),ifg.g0,float(ifg.gamma[i]),float(ifg.tau_grid[i])))
    return EXIT_OK

def command_sweep(config,writer,logger,threads=1):
    spec = config.sweep_spec()
    points = run_sweep(spec,threads,logger)
    units = spec.units
    writer.csv("sweep.csv",SWEEP_HEADER,[(units.from_engine(p.x),p.artifact_amplitude)
                                        for p in points])
    signs = np.sign([p.artifact_amplitude for p in points])
    changes = int(np.count_nonzero(signs[1:] * signs[:-1] < 0))
    logger.log_result("sweep","%d points / %d sign change(s)" % (len(points),changes))
    return EXIT_OK

def _null_document(result):
    if result is NO_NULL:
        return None
    return {'omega_rad_ps':result.omega,'freq_ghz':_ghz(result.omega),
            'amplitude':result.amplitude,'iterations':result.iterations,
            'bracket_ghz':[_ghz(w) for w in result.bracket]}

def command_null_search(config,writer,logger,threads=1):
    settings = config.null_search
    lo,hi = ghz_to_rad_per_ps(settings.lo_ghz),ghz_to_rad_per_ps(settings.hi_ghz)
    scenario = config.scenario
    result = locate_null(scenario,lo,hi,settings.scan_points)
    diagnostics = {'lo_ghz':settings.lo_ghz,'hi_ghz':settings.hi_ghz,
                   'scan_points':settings.scan_points}
    if result is not NO_NULL:
        diagnostics['amplitude_lo'] = result.amplitude_lo
        s = null_sensitivity(scenario,lo,hi,result.omega,settings.sensitivity_rad,
                             settings.scan_points)
        diagnostics['sensitivity'] = {
            'delta_rad':s.delta,
            'minus':_null_document(s.minus),
            'plus':_null_document(s.plus),
            'dfreq_ghz_per_rad':None if s.derivative is None else _ghz(s.derivative)}
    writer.json("null_search.json",{'result':_null_document(result),'diagnostics':diagnostics})
    if result is NO_NULL:
        logger.log_result("null-search","no null in [%g,%g] GHz" % (settings.lo_ghz,settings.hi_ghz))
    else:
        logger.log_result("null-search","null at %.6f GHz" % _ghz(result.omega))
    return EXIT_OK

def command_fit(config,writer,logger,threads=1):
    settings = config.fit
    if not settings.observations:
        raise ConfigError("fit.observations","required for the fit command")
    spec = config.sweep_spec()
    units = spec.units
    observations = [(units.to_engine(o.x),o.y,o.weight)
                        for o in read_observations(settings.observations)]
    problem = FitProblem(observations,settings.free,settings.bounds,settings.initial)
    result = fit(problem,spec,settings.starts,settings.seed,settings.max_iter,logger)
    writer.json("fit.json",{
        'result':{'parameters':result.parameters,'residual_norm':result.residual_norm,
                  'iterations':result.iterations,'converged':result.converged},
        'diagnostics':{'starts':result.starts,'observations':len(problem.observations),
                       'free':list(problem.free),'variable':VARIABLE[spec.variable],
                       'bounds':{k:list(v) for k,v in problem.bounds.items()}}})
    logger.log_result("fit","residual %.6g after %d iterations%s" % (
                        result.residual_norm,result.iterations,
                        "" if result.converged else " (not converged)"))
    return EXIT_OK

def command_validate(config,writer,logger,threads=1):
    settings = config.validate
    taus = config.tau_grid()
    cases = []
    worst = 0.0
    points = 0
    todo = config.validation_cases()
    for _,phi,s in todo:
        engine = s.interferogram(taus)
        oracle = oracle_interferogram(s.spectrum,s.mod1,s.mod2,s.stack,taus,
                                      settings.grid,s.epsilon,logger)
        err = float(np.max(np.abs(engine.gamma - oracle.gamma)))
        points = max(points,oracle_grid_points(s.spectrum,s.mod1,s.mod2,s.stack,taus,
                                               settings.grid,s.epsilon))
        cases.append({'theta2_rad':s.mod2.theta,'carrier_rad':phi,'max_abs_err':err,
                      'g0_engine':engine.g0,'g0_oracle':oracle.g0})
        worst = max(worst,err)
        logger.log_progress("validate",len(cases),len(todo))
    passed = worst <= settings.tolerance
    writer.json("validate.json",{
        'max_abs_err':worst,'passed':passed,'tolerance':settings.tolerance,
        'grid':{'half_width':settings.grid.half_width,'points_per_axis':points,
                'scheme':SCHEME[settings.grid.scheme]},
        'cases':cases})
    logger.log_result("validate","%s / max |dGamma| %.3g over %d case(s)" % (
                        "passed" if passed else "FAILED",worst,len(cases)))
    return EXIT_OK if passed else EXIT_VALIDATION

COMMANDS = {
    'interferogram': command_interferogram,
    'sweep': command_sweep,
    'null-search': command_null_search,
    'fit': command_fit,
    'validate': command_validate,
}

def _threads(value):
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError("%s must be an integer [%s]" % (THREADS_ENV,env))
    if value < 1:
        raise ValueError("thread count must be at least 1 [%d]" % value)
    return value

def parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config","-c",required=True,
                        metavar="<path|preset>",
                        help="Config file or bundled preset (%s)" % ",".join(preset_names()))
    common.add_argument("--out","-o",default=None,
                        metavar="<dir>",
                        help="Output directory (default: [output] dir or qoct-out)")
    common.add_argument("--mode","-m",choices=['full','diagonal'],default=None,
                        help="Engine mode (default: [engine] mode or full)")
    common.add_argument("--threads","-t",type=int,default=1,
                        metavar="<n>",
                        help="Worker threads for sweeps (default: 1, %s overrides)" % THREADS_ENV)
    common.add_argument("--log",default="",
                        help="Log hooks to enable (default: +config,+result,+error,-network,-progress,-data)")
    common.add_argument("--log-prefix",action='store_true',default=False,
                        help="Log prefix (timestamp/command) (default: False)")
    p = ArgumentParser(prog=PROG,description="Quantum OCT artifact simulator")
    p.add_argument("--version",action='version',version="%s %s" % (PROG,version))
    sub = p.add_subparsers(dest="command",metavar="<command>")
    sub.required = True
    for name,f in COMMANDS.items():
        sub.add_parser(name,parents=[common],help=name.replace('-',' '),
                       description="%s (%s)" % (PROG,name))
    return p

def main(argv=None):
    args = parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr,format="%(message)s",level=logging.INFO)
    logger = SimLogger(args.log,prefix=args.log_prefix,command=args.command)
    try:
        threads = _threads(args.threads)
        config = load_config(args.config)
        if args.mode:
            config = config.with_mode(args.mode)
        logger.log_config(config)
        writer = ResultWriter(args.out or config.output_dir)
        manifest = RunManifest(config.digest,version,args.command,config.mode_name,
                               config.resolved()).start()
        status = COMMANDS[args.command](config,writer,logger,threads)
        writer.manifest(manifest.stop())
        return status
    except ERRORS as e:
        logger.log_error(args.command,e)
        print("%s: error: %s" % (PROG,e),file=sys.stderr)
        return EXIT_ERROR

if __name__ == '__main__':
    sys.exit(main())
