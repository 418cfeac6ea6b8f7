#!/usr/bin/env python3

import argparse,pprint,string,traceback
from random import choice,randrange

from qoctsim.config import ConfigError,parse_config,preset_path

CHARS = string.printable

def fuzz_delete(s):
    """ Delete character """
    i = randrange(len(s))
    return s[:i] + s[i+1:]

def fuzz_add(s):
    """ Add character """
    i = randrange(len(s))
    return s[:i] + choice(CHARS) + s[i:]

def fuzz_change(s):
    """ Change character """
    i = randrange(len(s))
    return s[:i] + choice(CHARS) + s[i+1:]

def fname(f):
    return f.__name__

if __name__ == '__main__':

    a = argparse.ArgumentParser(description="Config Fuzzer")
    a.add_argument("--preset","-p",default="desk-oracle",
                   help="Preset to mutate (default:desk-oracle)")
    a.add_argument("--debug","-d",action='store_true',default=False,
                   help="Print debug output")
    a.add_argument("--number","-n",type=int,default=200,
                   help="Number of iterations (default:200)")
    args = a.parse_args()

    def p(*s):
        if args.debug:
            print(*s)

    uncaught = 0
    exceptions = []

    with open(preset_path(args.preset),encoding='utf-8') as f:
        text = f.read()

    original = parse_config(text)
    p("Original:",original.digest)

    for f in (fuzz_delete,fuzz_add,fuzz_change):
        for i in range(args.number):
            fuzzed_text = f(text)
            try:
                fuzzed = parse_config(fuzzed_text)
                if original != fuzzed:
                    p("[%s:parsed ok] >>> digest %s" % (fname(f),fuzzed.digest[:12]))
            except ConfigError as e:
                p("[%s:exception] >>> %s" % (fname(f),str(e)))
            except Exception as e:
                uncaught += 1
                exceptions.append((fuzzed_text,traceback.format_exc(limit=1)))
                p(traceback.format_exc())

    p("-----------------------")
    print("Uncaught Exceptions: %d" % uncaught)

    if exceptions:
        pprint.pprint(exceptions)
