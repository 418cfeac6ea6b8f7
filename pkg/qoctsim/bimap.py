# -*- coding: utf-8 -*-

"""
    Bimap - bidirectional mapping between code/name used for the
    enumerated settings (engine mode, quadrature scheme, sweep variable...)
"""

class BimapError(Exception):
    pass

class Bimap(object):

    """
        Bi-directional mapping between integer code and name.

        Initialised using:

            name:   Used for exceptions
            dict:   Dict mapping from code to name
            error:  Error type to raise if key not found

        The class provides:

            * A 'forward' map (code->name) which is accessed through
              __getitem__ (bimap[code])
            * A 'reverse' map (name->code) which is accessed through
              __getattr__ (bimap.name)
            * 'parse' which accepts either a code or a name (as used
              by the config parser) and returns the code
            * 'names' which lists the names in code order

        >>> class TestError(Exception):
        ...     pass

        >>> MODE = Bimap('MODE',{0:'full',1:'diagonal'},TestError)
        >>> MODE[1]
        'diagonal'
        >>> MODE.full
        0
        >>> MODE.parse('diagonal')
        1
        >>> MODE.parse(0)
        0
        >>> MODE.names()
        ['full', 'diagonal']
        >>> MODE.fast # doctest: +IGNORE_EXCEPTION_DETAIL
        Traceback (most recent call last):
        ...
        TestError: MODE: Invalid reverse lookup: [fast]
        >>> MODE[7] # doctest: +IGNORE_EXCEPTION_DETAIL
        Traceback (most recent call last):
        ...
        TestError: MODE: Invalid forward lookup: [7]
        >>> MODE.parse("fast") # doctest: +IGNORE_EXCEPTION_DETAIL
        Traceback (most recent call last):
        ...
        TestError: MODE: Invalid value: [fast] (expected one of full,diagonal)

    """

    def __init__(self,name,forward,error=BimapError):
        self.name = name
        self.error = error
        self.forward = forward.copy()
        self.reverse = dict([(v,k) for (k,v) in forward.items()])

    def names(self):
        return [self.forward[k] for k in sorted(self.forward)]

    def parse(self,v):
        if isinstance(v,str) and v in self.reverse:
            return self.reverse[v]
        if not isinstance(v,(str,bool)) and v in self.forward:
            return v
        raise self.error("%s: Invalid value: [%s] (expected one of %s)" %
                                (self.name,v,",".join(self.names())))

    def __getitem__(self,k):
        try:
            return self.forward[k]
        except KeyError:
            raise self.error("%s: Invalid forward lookup: [%s]" % (self.name,k))

    def __getattr__(self,k):
        try:
            # doctest/inspect probe for __wrapped__
            if k.startswith("__"):
                raise AttributeError(k)
            return self.reverse[k]
        except KeyError:
            raise self.error("%s: Invalid reverse lookup: [%s]" % (self.name,k))

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod().failed == 0 else 1)
