# -*- coding: utf-8 -*-

"""
    Hook logger for simulation runs.

    >>> lines = []
    >>> logger = SimLogger("+network,-config",prefix=False,logf=lines.append)
    >>> logger.log_config(None)
    >>> logger.log_progress("sweep",1,10)
    >>> logger.log_result("sweep","10 points")
    >>> lines
    ['Result: sweep / 10 points']
    >>> SimLogger("progress",prefix=False,logf=lines.append).log_result("x","y")
    >>> len(lines)
    1

"""

import json
import logging
import time

HOOKS = ('config','network','progress','result','error','data')
DEFAULT_HOOKS = ('config','result','error')

class SimLogger:

    """
        Default logging hooks for the stages of a qoct-sim command,
        enabled/disabled by the 'log' argument.

        The hooks are:

            log_config        - Resolved configuration summary
            log_network       - Sideband network size and truncation
            log_progress      - Sweep point / tau block / fit start done
            log_result        - Command summary
            log_error         - Error reported by a command
            log_data          - Dump of all resolved parameters

        Log lines go to 'logf' (defaults to the info method of the
        'qoctsim' logger).
    """

    def __init__(self,log="",prefix=True,command="",logf=None):
        """
            Comma separated list of hooks to enable/disable:

            - empty enables the default hooks
            - '+hook' enables and '-hook' disables a hook
            - a bare 'hook' list replaces the defaults
        """
        log = log.split(",") if log else []
        enabled = set([s for s in log if s[0] not in '+-'] or DEFAULT_HOOKS)
        [enabled.add(l[1:]) for l in log if l.startswith('+')]
        [enabled.discard(l[1:]) for l in log if l.startswith('-')]
        for hook in HOOKS:
            if hook not in enabled:
                setattr(self,'log_' + hook,self.log_pass)
        self.prefix = prefix
        self.command = command
        self.logf = logf or logging.getLogger("qoctsim").info

    def log_pass(self,*args):
        pass

    def log_prefix(self):
        if self.prefix:
            return "%s [%s] " % (time.strftime("%Y-%m-%d %X"),self.command or "qoctsim")
        else:
            return ""

    def log_config(self,config):
        self.logf("%sConfig: %s / digest %s / %d layer(s) / mode %s" % (
                    self.log_prefix(),
                    config.source,
                    config.digest[:12],
                    len(config.scenario.stack),
                    config.mode_name))
        self.log_data(config.resolved())

    def log_network(self,network):
        a = network.arrays
        self.logf("%sNetwork: %d entries / |m| <= %d / |n| <= %d / weight %.12f" % (
                    self.log_prefix(),
                    len(network),
                    int(abs(a.m).max()),
                    int(abs(a.n).max()),
                    network.total_weight()))

    def log_progress(self,task,done,total):
        self.logf("%sProgress: %s %d/%d" % (self.log_prefix(),task,done,total))

    def log_result(self,command,summary):
        self.logf("%sResult: %s / %s" % (self.log_prefix(),command,summary))

    def log_error(self,command,error):
        self.logf("%sError: %s / %s: %s" % (self.log_prefix(),command,
                                             error.__class__.__name__,error))

    def log_data(self,data):
        self.logf("%s%s" % (self.log_prefix(),json.dumps(data,sort_keys=True,indent=2)))

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
