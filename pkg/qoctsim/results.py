# -*- coding: utf-8 -*-

"""
    Result files: CSV tables with fixed headers, JSON documents and the
    run manifest written next to them.

    Floats are written with repr() so identical results give
    byte-identical files.

    >>> import io
    >>> out = io.StringIO()
    >>> write_csv(out,INTERFEROGRAM_HEADER,[(0.0,1.0),(0.5,0.25)])
    >>> out.getvalue()
    'tau_ps,gamma\\n0.0,1.0\\n0.5,0.25\\n'
    >>> write_csv(out,SWEEP_HEADER,[(1.0,)]) # doctest: +IGNORE_EXCEPTION_DETAIL
    Traceback (most recent call last):
    ...
    ResultError: row 0 has 1 field(s) for header x,artifact_amplitude

"""

import csv
import datetime
import json
import os
import time
from dataclasses import asdict,dataclass,field

class ResultError(Exception):
    pass

INTERFEROGRAM_HEADER = ('tau_ps','gamma')
COUNTS_HEADER = ('tau_ps','coincidences')
SWEEP_HEADER = ('x','artifact_amplitude')

MANIFEST = "manifest.json"

def _field(v):
    return repr(float(v)) if isinstance(v,float) else v

def write_csv(f,header,rows):
    """
        Rows of numbers under a fixed header, '.' decimal, '\\n' newlines
    """
    w = csv.writer(f,lineterminator="\n")
    w.writerow(header)
    for i,row in enumerate(rows):
        row = tuple(row)
        if len(row) != len(header):
            raise ResultError("row %d has %d field(s) for header %s" % (i,len(row),",".join(header)))
        w.writerow([_field(v) for v in row])

def write_json(f,document):
    json.dump(document,f,indent=2,sort_keys=True,allow_nan=False)
    f.write("\n")

def _jsonable(v):
    """
        Replace non-finite floats (not valid JSON) by their string form
    """
    if isinstance(v,float) and (v != v or v in (float('inf'),float('-inf'))):
        return repr(v)
    if isinstance(v,dict):
        return {k:_jsonable(x) for k,x in v.items()}
    if isinstance(v,(list,tuple)):
        return [_jsonable(x) for x in v]
    return v

@dataclass
class RunManifest:
    """
        Provenance of one command run
    """
    digest: str
    version: str
    command: str
    mode: str
    resolved: dict = field(default_factory=dict)
    timestamp: str = ""
    duration_s: float = 0.0
    _start: float = field(default=0.0,repr=False)

    def start(self):
        self.timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec='seconds')
        self._start = time.monotonic()
        return self

    def stop(self):
        self.duration_s = time.monotonic() - self._start
        return self

    def document(self):
        d = asdict(self)
        del d['_start']
        return _jsonable(d)

class ResultWriter(object):

    """
        Output directory for one command
    """

    def __init__(self,directory):
        self.directory = directory
        try:
            os.makedirs(directory,exist_ok=True)
        except OSError as e:
            raise ResultError("%s: %s" % (directory,e.strerror))

    def path(self,name):
        return os.path.join(self.directory,name)

    def _open(self,name):
        return open(self.path(name),"w",encoding='utf-8',newline='')

    def csv(self,name,header,rows):
        with self._open(name) as f:
            write_csv(f,header,rows)

    def json(self,name,document):
        with self._open(name) as f:
            write_json(f,_jsonable(document))

    def manifest(self,manifest):
        self.json(MANIFEST,manifest.document())

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
