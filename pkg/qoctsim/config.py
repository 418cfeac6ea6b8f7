# -*- coding: utf-8 -*-

"""
    Run configuration: a TOML document resolved into engine objects.

    All units are converted on parsing (GHz -> rad/ps, degrees ->
    radians, thickness/index -> round-trip delay in ps) and every
    resolved value is available through RunConfig.resolved() for the
    run manifest.

    >>> c = parse_config('''
    ... [source]
    ... sigma_a = 2.0
    ... sigma_d = 0.5
    ... [sample]
    ... layers = [{r = 0.6, delay_ps = 0.0}, {r = 0.97, delay_ps = 6.0}]
    ... [carrier_phase]
    ... mode = "explicit"
    ... rad = 3.0
    ... ''')
    >>> len(c.scenario.network), c.scenario.stack.delays
    (1, (0.0, 6.0))
    >>> c.scenario.spectrum.layer_phases(c.scenario.stack.delays)
    (0.0, 3.0)
    >>> c.mode_name, c.scenario.g0_method
    ('full', 'auto')
    >>> parse_config(render_config(c)) == c
    True

    Errors name the offending key:

    >>> parse_config('[source]\\nsigma_a = -2.0\\nsigma_d = 0.5\\n') # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    ConfigError: source.sigma_a: Attribute 'sigma_a' must be positive [-2.0]
    >>> try:
    ...     _ = parse_config('[source]\\nsigma_a = 2.0\\nsigma_d = 0.5\\nspeed = 1\\n')
    ... except ConfigError as e:
    ...     print(e.key)
    source.speed

    The digest ignores key order:

    >>> a = parse_config('[source]\\nsigma_a = 2.0\\nsigma_d = 0.5\\n')
    >>> b = parse_config('[source]\\nsigma_d = 0.5\\nsigma_a = 2.0\\n')
    >>> a.digest == b.digest
    True

"""

import copy
import hashlib
import json
import math
import os
import re
from dataclasses import dataclass,field

try:
    import tomllib
except ImportError:
    import tomli as tomllib

import numpy as np

from qoctsim.biphoton import (BiphotonError,BiphotonSpectrum,CarrierPhase,ModulationSettings,
                              from_drive_voltage,ghz_to_rad_per_ps,omega_from_wavelength_nm,
                              sigma_a_from_filter)
from qoctsim.engine import (EngineError,G0_METHOD,MODE,Scenario,calibrate_peak_phase)
from qoctsim.fit import DEFAULT_FREE,DEFAULT_MAX_ITER,DEFAULT_STARTS,FitError,PARAMETERS
from qoctsim.quadrature import QuadratureError,QuadratureGrid,SCHEME
from qoctsim.ranges import (check_finite,check_int_range,check_nonnegative,check_open_range,
                            check_positive,check_range)
from qoctsim.sample import SampleError,from_physical_stack,LayerStack
from qoctsim.specfun import DEFAULT_EPSILON,SpecfunError
from qoctsim.sweeps import VARIABLE,VARIABLE_UNITS,SweepError,SweepSpec

class ConfigError(Exception):

    def __init__(self,key,msg):
        self.key = key
        super().__init__("%s: %s" % (key,msg))

PRESET_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)),"presets")

CARRIER_MODES = ('explicit','calibrate_peak','from_omega0')
DEFAULT_PUMP_LINEWIDTH = 0.01
DEFAULT_SCAN_POINTS = 1001
DEFAULT_SWEEP_COUNT = 51
DEFAULT_OUTPUT_DIR = "qoct-out"

# Library errors raised while resolving values
_RESOLVE_ERRORS = (BiphotonError,SampleError,EngineError,SweepError,FitError,
                   QuadratureError,SpecfunError,ValueError,TypeError,ArithmeticError)

class _Table(object):

    """
        Typed access to one TOML table; keys never read are reported
        as unknown by done()
    """

    def __init__(self,data,path):
        if not isinstance(data,dict):
            raise ConfigError(path,"expected a table")
        self.data = data
        self.path = path
        self.used = set()

    def key(self,name):
        return "%s.%s" % (self.path,name) if self.path else name

    def has(self,name):
        return name in self.data

    def exclusive(self,*names):
        given = [n for n in names if n in self.data]
        if len(given) > 1:
            raise ConfigError(self.key(given[1]),"conflicts with '%s'" % given[0])
        return given[0] if given else None

    def get(self,name,default=None,kind=float,check=None):
        self.used.add(name)
        if name not in self.data:
            return default
        v = self.data[name]
        if kind is float:
            if isinstance(v,bool) or not isinstance(v,(int,float)):
                raise ConfigError(self.key(name),"expected a number [%r]" % (v,))
            v = float(v)
        elif kind is int:
            if isinstance(v,bool) or not isinstance(v,int):
                raise ConfigError(self.key(name),"expected an integer [%r]" % (v,))
        elif not isinstance(v,kind):
            raise ConfigError(self.key(name),"expected %s [%r]" % (kind.__name__,v))
        if check:
            try:
                check(name,v)
            except ValueError as e:
                raise ConfigError(self.key(name),str(e))
        return v

    def numbers(self,name,default=()):
        values = self.get(name,None,list)
        if values is None:
            return list(default)
        out = []
        for i,v in enumerate(values):
            if isinstance(v,bool) or not isinstance(v,(int,float)):
                raise ConfigError("%s[%d]" % (self.key(name),i),"expected a number [%r]" % (v,))
            out.append(float(v))
        return out

    def table(self,name):
        self.used.add(name)
        return _Table(self.data.get(name,{}),self.key(name))

    def done(self):
        unknown = sorted(set(self.data) - self.used)
        if unknown:
            raise ConfigError(self.key(unknown[0]),"unknown key")

def _resolving(key,f,*args,**kwargs):
    try:
        return f(*args,**kwargs)
    except ConfigError:
        raise
    except _RESOLVE_ERRORS as e:
        raise ConfigError(key,str(e))

def _parse_source(t):
    if t.has('sigma_a') or t.has('sigma_d'):
        t.exclusive('sigma_a','center_wavelength_nm')
        t.exclusive('sigma_d','pump_linewidth')
        sigma_a = t.get('sigma_a',check=check_positive)
        sigma_d = t.get('sigma_d',check=check_positive)
        if sigma_a is None or sigma_d is None:
            raise ConfigError(t.key('sigma_a' if sigma_a is None else 'sigma_d'),
                              "required with '%s'" % ('sigma_d' if sigma_a is None else 'sigma_a'))
        center = None
    elif t.has('center_wavelength_nm') or t.has('filter_fwhm_nm'):
        center = t.get('center_wavelength_nm',check=check_positive)
        fwhm = t.get('filter_fwhm_nm',check=check_positive)
        if center is None or fwhm is None:
            raise ConfigError(t.key('filter_fwhm_nm' if center else 'center_wavelength_nm'),
                              "required for a filter-defined source")
        sigma_a = _resolving(t.key('filter_fwhm_nm'),sigma_a_from_filter,center,fwhm)
        sigma_d = t.get('pump_linewidth',DEFAULT_PUMP_LINEWIDTH,check=check_positive)
    else:
        raise ConfigError(t.path,"need sigma_a + sigma_d or center_wavelength_nm + filter_fwhm_nm")
    which = t.exclusive('omega0','pump_wavelength_nm')
    if which == 'omega0':
        omega0 = t.get('omega0',check=check_nonnegative)
    elif which == 'pump_wavelength_nm':
        pump = t.get('pump_wavelength_nm',check=check_positive)
        omega0 = omega_from_wavelength_nm(pump) / 2.0
    elif center is not None:
        omega0 = omega_from_wavelength_nm(center)
    else:
        omega0 = 0.0
    t.done()
    return sigma_a,sigma_d,omega0

def _parse_arm(t):
    if t.has('v_pp') or t.has('v_pi'):
        t.exclusive('beta','v_pp')
        t.exclusive('beta','v_pi')
        v_pp = t.get('v_pp',check=check_nonnegative)
        v_pi = t.get('v_pi',check=check_positive)
        if v_pp is None or v_pi is None:
            raise ConfigError(t.key('v_pp' if v_pp is None else 'v_pi'),"drive needs both v_pp and v_pi")
        beta = _resolving(t.key('v_pp'),from_drive_voltage,v_pp,v_pi)
    else:
        beta = t.get('beta',0.0,check=check_nonnegative)
    if t.exclusive('freq_ghz','omega_rad_ps') == 'freq_ghz':
        omega = ghz_to_rad_per_ps(t.get('freq_ghz',check=check_nonnegative))
    else:
        omega = t.get('omega_rad_ps',0.0,check=check_nonnegative)
    if t.exclusive('theta_deg','theta_rad') == 'theta_deg':
        theta = math.radians(t.get('theta_deg',check=check_finite))
    else:
        theta = t.get('theta_rad',0.0,check=check_finite)
    t.done()
    return _resolving(t.path,ModulationSettings,beta,omega,theta)

def _parse_sample(t):
    if t.has('layers'):
        for name in ('thickness_mm','n','R','r'):
            if t.has(name):
                raise ConfigError(t.key(name),"conflicts with 'layers'")
        layers = t.get('layers',kind=list)
        pairs = []
        for i,entry in enumerate(layers):
            lt = _Table(entry,"%s[%d]" % (t.key('layers'),i))
            if lt.exclusive('r','R') == 'R':
                r = math.sqrt(lt.get('R',check=lambda n,v: check_range(n,v,0.0,1.0)))
            else:
                r = lt.get('r',check=lambda n,v: check_range(n,v,0.0,1.0))
            delay = lt.get('delay_ps',check=check_nonnegative)
            if r is None or delay is None:
                raise ConfigError(lt.key('r' if r is None else 'delay_ps'),"required")
            lt.done()
            pairs.append((r,delay))
        stack = _resolving(t.key('layers'),LayerStack.from_pairs,pairs)
    elif t.has('thickness_mm'):
        thickness = t.numbers('thickness_mm')
        index = t.numbers('n')
        amplitude = t.exclusive('R','r') == 'r'
        refl = t.numbers('r' if amplitude else 'R')
        for i,d in enumerate(thickness):
            try:
                check_nonnegative("thickness_mm",d)
            except ValueError as e:
                raise ConfigError("%s[%d]" % (t.key('thickness_mm'),i),str(e))
        for i,n in enumerate(index):
            try:
                check_range("n",n,1.0,math.inf)
            except ValueError as e:
                raise ConfigError("%s[%d]" % (t.key('n'),i),str(e))
        stack = _resolving(t.path,from_physical_stack,thickness,index,refl,amplitude)
    elif not t.data:
        stack = LayerStack.single()
    else:
        raise ConfigError(t.path,"need 'layers' or 'thickness_mm' + 'n' + 'R'")
    t.done()
    return stack

def _parse_carrier(t,spectrum,stack,epsilon):
    mode = t.get('mode','calibrate_peak',str)
    if mode not in CARRIER_MODES:
        raise ConfigError(t.key('mode'),"expected one of %s [%s]" % (",".join(CARRIER_MODES),mode))
    if mode == 'explicit':
        if t.exclusive('rad','layers_rad') == 'layers_rad':
            carrier = _resolving(t.key('layers_rad'),CarrierPhase.per_layer,t.numbers('layers_rad'))
            _resolving(t.key('layers_rad'),carrier.layer_phases,stack.delays)
        else:
            carrier = CarrierPhase.explicit(t.get('rad',0.0,check=check_finite))
    else:
        for name in ('rad','layers_rad'):
            if t.has(name):
                raise ConfigError(t.key(name),"only valid with mode = \"explicit\"")
        if mode == 'from_omega0':
            if not spectrum.omega0 > 0:
                raise ConfigError(t.key('mode'),"from_omega0 needs source.omega0 > 0")
            carrier = CarrierPhase.from_omega0()
        else:
            phi = _resolving(t.key('mode'),calibrate_peak_phase,spectrum,stack,epsilon)
            carrier = CarrierPhase.explicit(phi)
    t.done()
    return mode,_resolving(t.path,spectrum.with_carrier,carrier)

def _parse_scan(t,stack):
    span = stack.span
    start = t.get('start_ps',-(0.1 * span + 1.0),check=check_finite)
    stop = t.get('stop_ps',1.1 * span + 1.0,check=check_finite)
    if not stop > start:
        raise ConfigError(t.key('stop_ps'),"must be greater than start_ps [%s]" % stop)
    if t.exclusive('step_ps','points') == 'step_ps':
        step = t.get('step_ps',check=check_positive)
        points = int(round((stop - start) / step)) + 1
        if points < 2:
            raise ConfigError(t.key('step_ps'),"larger than the scan range [%s]" % step)
        stop = start + (points - 1) * step
    else:
        points = t.get('points',DEFAULT_SCAN_POINTS,int,
                       check=lambda n,v: check_int_range(n,v,2,None))
    t.done()
    return (start,stop,points)

@dataclass(frozen=True)
class NullSearchSettings:
    lo_ghz: float = 1.0
    hi_ghz: float = 12.7
    scan_points: int = 200
    sensitivity_rad: float = 0.2

@dataclass(frozen=True)
class FitSettings:
    observations: str = ""
    free: tuple = DEFAULT_FREE
    starts: int = DEFAULT_STARTS
    seed: int = 0
    max_iter: int = DEFAULT_MAX_ITER
    bounds: dict = field(default_factory=dict)
    initial: dict = field(default_factory=dict)

@dataclass(frozen=True)
class ValidateSettings:
    tolerance: float = 1e-3
    grid: QuadratureGrid = QuadratureGrid()
    theta2: tuple = ()
    carrier: tuple = ()

def _parse_null_search(t):
    lo = t.get('lo_ghz',1.0,check=check_positive)
    hi = t.get('hi_ghz',12.7,check=check_positive)
    if not hi > lo:
        raise ConfigError(t.key('hi_ghz'),"must be greater than lo_ghz [%s]" % hi)
    points = t.get('scan_points',200,int,check=lambda n,v: check_int_range(n,v,0,None))
    delta = t.get('sensitivity_rad',0.2,check=check_positive)
    t.done()
    return NullSearchSettings(lo,hi,points,delta)

def _parse_fit(t,base_dir):
    path = t.get('observations',"",str)
    if path and not os.path.isabs(path):
        path = os.path.join(base_dir,path)
    free = t.get('free',list(DEFAULT_FREE),list)
    for i,name in enumerate(free):
        if name not in PARAMETERS:
            raise ConfigError("%s[%d]" % (t.key('free'),i),
                              "expected one of %s [%s]" % (",".join(PARAMETERS),name))
    starts = t.get('starts',DEFAULT_STARTS,int,check=lambda n,v: check_int_range(n,v,1,1000))
    seed = t.get('seed',0,int,check=lambda n,v: check_int_range(n,v,0,None))
    max_iter = t.get('max_iter',DEFAULT_MAX_ITER,int,check=lambda n,v: check_int_range(n,v,1,None))
    bt = t.table('bounds')
    bounds = {}
    for name in sorted(bt.data):
        if name not in PARAMETERS:
            raise ConfigError(bt.key(name),"unknown parameter")
        values = bt.numbers(name)
        if len(values) != 2 or not all(map(math.isfinite,values)) or not values[0] < values[1]:
            raise ConfigError(bt.key(name),"expected finite [lo, hi] with lo < hi")
        bounds[name] = tuple(values)
    bt.done()
    it = t.table('initial')
    initial = {}
    for name in sorted(it.data):
        if name not in PARAMETERS:
            raise ConfigError(it.key(name),"unknown parameter")
        initial[name] = it.get(name,check=check_finite)
    it.done()
    t.done()
    return FitSettings(path,tuple(free),starts,seed,max_iter,bounds,initial)

def _parse_validate(t):
    tolerance = t.get('tolerance',1e-3,check=check_positive)
    half_width = t.get('half_width',5.0)
    points = t.get('points_per_axis',0,int)
    scheme = t.get('scheme','simpson',str)
    grid = _resolving(t.path,QuadratureGrid,half_width,points,_resolving(t.key('scheme'),SCHEME.parse,scheme))
    theta2 = tuple(math.radians(v) for v in t.numbers('theta2_deg'))
    carrier = tuple(t.numbers('carrier_rad'))
    t.done()
    return ValidateSettings(tolerance,grid,theta2,carrier)

@dataclass(frozen=True,eq=False)
class RunConfig:
    """
        Resolved configuration; equality and the digest follow the
        source document
    """
    document: dict
    source: str
    base_dir: str
    scenario: Scenario
    carrier_mode: str
    scan: tuple
    output_dir: str = DEFAULT_OUTPUT_DIR
    n0: float = None
    sweep: tuple = None
    null_search: NullSearchSettings = NullSearchSettings()
    fit: FitSettings = FitSettings()
    validate: ValidateSettings = ValidateSettings()

    def __eq__(self,other):
        return isinstance(other,RunConfig) and self.document == other.document

    __hash__ = None

    @property
    def digest(self):
        return digest(self.document)

    @property
    def mode_name(self):
        return MODE[self.scenario.mode]

    def tau_grid(self):
        start,stop,points = self.scan
        return np.linspace(start,stop,points)

    def sweep_spec(self):
        if self.sweep is None:
            raise ConfigError("sweep","no [sweep] table in %s" % self.source)
        variable,start,stop,count = self.sweep
        units = VARIABLE_UNITS[variable]
        try:
            return SweepSpec(variable,units.to_engine(start),units.to_engine(stop),count,self.scenario)
        except SweepError as e:
            raise ConfigError("sweep",str(e))

    def with_mode(self,mode):
        """
            Same configuration with engine.mode replaced
        """
        doc = copy.deepcopy(self.document)
        doc.setdefault('engine',{})['mode'] = MODE[MODE.parse(mode)]
        return parse_document(doc,self.source,self.base_dir)

    def validation_cases(self):
        """
            (theta2, carrier phase, scenario) for every combination of
            the [validate] lists (None where the configured value is kept)
        """
        cases = []
        for theta2 in self.validate.theta2 or (None,):
            for phi in self.validate.carrier or (None,):
                s = self.scenario
                if theta2 is not None:
                    s = s.replace(mod2=ModulationSettings(s.mod2.beta,s.mod2.omega_rf,theta2))
                if phi is not None:
                    s = s.replace(spectrum=s.spectrum.with_carrier(CarrierPhase.explicit(phi)))
                cases.append((theta2,phi,s))
        return cases

    def resolved(self):
        """
            Every resolved parameter in engine units
        """
        s = self.scenario
        def arm(m):
            return {'beta':m.beta,'omega_rad_ps':m.omega_rf,'theta_rad':m.theta}
        out = {
            'source':{'sigma_a':s.spectrum.sigma_a,'sigma_d':s.spectrum.sigma_d,
                      'omega0':s.spectrum.omega0},
            'modulation':{'arm1':arm(s.mod1),'arm2':arm(s.mod2)},
            'sample':{'layers':[{'r':l.r,'delay_ps':l.delay} for l in s.stack.layers]},
            'carrier_phase':{'mode':self.carrier_mode,
                             'layers_rad':list(s.spectrum.layer_phases(s.stack.delays))},
            'scan':{'start_ps':self.scan[0],'stop_ps':self.scan[1],'points':self.scan[2]},
            'engine':{'mode':self.mode_name,'epsilon':s.epsilon,'g0':s.g0_method},
            'output':{'dir':self.output_dir,'n0':self.n0},
        }
        if self.sweep is not None:
            variable,start,stop,count = self.sweep
            units = VARIABLE_UNITS[variable]
            out['sweep'] = {'variable':VARIABLE[variable],'count':count,
                            'start':units.to_engine(start),'stop':units.to_engine(stop)}
        return out

def digest(document):
    """
        sha256 of the canonical JSON form of a config document
    """
    text = json.dumps(document,sort_keys=True,separators=(',',':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()

def parse_document(document,source="<string>",base_dir="."):
    root = _Table(copy.deepcopy(document),"")
    sigma_a,sigma_d,omega0 = _parse_source(root.table('source'))
    mt = root.table('modulation')
    mod1 = _parse_arm(mt.table('arm1'))
    mod2 = _parse_arm(mt.table('arm2'))
    mt.done()
    stack = _parse_sample(root.table('sample'))
    et = root.table('engine')
    mode = _resolving(et.key('mode'),MODE.parse,et.get('mode','full',str))
    epsilon = et.get('epsilon',DEFAULT_EPSILON,check=lambda n,v: check_open_range(n,v,0.0,1.0))
    g0_method = et.get('g0','auto',str)
    _resolving(et.key('g0'),G0_METHOD.parse,g0_method)
    et.done()
    spectrum = _resolving('source',BiphotonSpectrum,sigma_a,sigma_d,omega0)
    carrier_mode,spectrum = _parse_carrier(root.table('carrier_phase'),spectrum,stack,epsilon)
    scenario = _resolving('engine',Scenario,spectrum,stack,mod1,mod2,mode,epsilon,g0_method)
    _resolving('modulation',lambda: scenario.network)
    scan = _parse_scan(root.table('scan'),stack)
    ot = root.table('output')
    output_dir = ot.get('dir',DEFAULT_OUTPUT_DIR,str)
    n0 = ot.get('n0',check=check_positive)
    ot.done()
    sweep = None
    if root.has('sweep'):
        st = root.table('sweep')
        name = st.get('variable',kind=str)
        if name is None:
            raise ConfigError(st.key('variable'),"required")
        variable = _resolving(st.key('variable'),VARIABLE.parse,name)
        start = st.get('start',check=check_finite)
        stop = st.get('stop',check=check_finite)
        if start is None or stop is None:
            raise ConfigError(st.key('start' if start is None else 'stop'),"required")
        count = st.get('count',DEFAULT_SWEEP_COUNT,int)
        st.done()
        sweep = (variable,start,stop,count)
    null_search = _parse_null_search(root.table('null_search'))
    fit = _parse_fit(root.table('fit'),base_dir)
    validate = _parse_validate(root.table('validate'))
    root.done()
    config = RunConfig(root.data,source,base_dir,scenario,carrier_mode,scan,output_dir,n0,
                       sweep,null_search,fit,validate)
    if sweep is not None:
        config.sweep_spec()
    return config

def parse_config(text,source="<string>",base_dir="."):
    """
        RunConfig from TOML text; raises ConfigError with the key path
    """
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigError("config","%s: %s" % (source,e))
    return parse_document(document,source,base_dir)

def preset_names():
    return sorted(f[:-5] for f in os.listdir(PRESET_DIR) if f.endswith(".toml"))

def preset_path(name):
    path = os.path.join(PRESET_DIR,name + ".toml")
    if not os.path.exists(path):
        raise ConfigError("config","unknown preset '%s' (expected one of %s)" %
                                (name,",".join(preset_names())))
    return path

def load_config(path):
    """
        RunConfig from a file path or a bundled preset name
    """
    if not os.path.exists(path):
        path = preset_path(path)
    try:
        with open(path,encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ConfigError("config","%s: %s" % (path,e.strerror))
    return parse_config(text,path,os.path.dirname(os.path.abspath(path)))

_BARE_KEY = re.compile(r'^[A-Za-z0-9_-]+$')

def _key(k):
    return k if _BARE_KEY.match(k) else json.dumps(k)

def _value(v):
    if isinstance(v,bool):
        return "true" if v else "false"
    if isinstance(v,int):
        return str(v)
    if isinstance(v,float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if isinstance(v,str):
        return json.dumps(v)
    if isinstance(v,list):
        return "[" + ", ".join(_value(x) for x in v) + "]"
    if isinstance(v,dict):
        return "{" + ", ".join("%s = %s" % (_key(k),_value(x)) for k,x in sorted(v.items())) + "}"
    raise ConfigError("config","cannot render value %r" % (v,))

def _render_table(lines,path,table):
    scalars = [(k,v) for k,v in sorted(table.items()) if not isinstance(v,dict)]
    tables = [(k,v) for k,v in sorted(table.items()) if isinstance(v,dict)]
    if path and (scalars or not tables):
        if lines:
            lines.append("")
        lines.append("[%s]" % ".".join(_key(p) for p in path))
    for k,v in scalars:
        lines.append("%s = %s" % (_key(k),_value(v)))
    for k,v in tables:
        _render_table(lines,path + [k],v)

def render_config(config):
    """
        TOML text for a RunConfig (or a config document): sorted keys,
        scalars before sub-tables
    """
    document = config.document if isinstance(config,RunConfig) else config
    lines = []
    _render_table(lines,[],document)
    return "\n".join(lines) + "\n"

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
