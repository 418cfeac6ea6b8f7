# -*- coding: utf-8 -*-

"""
    Argument checks used by the value types (raise ValueError).

    The frozen dataclasses call these from __post_init__ so that an
    invalid spectrum/stack/grid can never be constructed.

    >>> check_range("r",0.6,0.0,1.0)
    >>> check_range("r",1.5,0.0,1.0)
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'r' must be between 0.0-1.0 [1.5]
    >>> check_range("r","x",0.0,1.0)
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'r' must be between 0.0-1.0 [x]
    >>> check_positive("sigma_a",2.0)
    >>> check_positive("sigma_a",0.0)
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'sigma_a' must be positive [0.0]
    >>> check_nonnegative("beta",-0.1)
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'beta' must be non-negative [-0.1]
    >>> check_finite("tau",float('nan'))
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'tau' must be finite [nan]
    >>> check_int_range("points",32,64,None)
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'points' must be integer >= 64 [32]
    >>> check_int_range("order",True,0,None)
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'order' must be integer >= 0 [True]
    >>> check_instance("layers",(),tuple)
    >>> check_instance("layers",[],tuple)
    Traceback (most recent call last):
    ...
    ValueError: Attribute 'layers' must be instance of ...

"""

import math,numbers

real_types = (numbers.Real,)

def _is_real(val):
    return isinstance(val,real_types) and not isinstance(val,bool)

def check_instance(name,val,types):
    if not isinstance(val,types):
        raise ValueError("Attribute '%s' must be instance of %s [%s]" %
                                        (name,types,type(val)))

def check_finite(name,val):
    if not (_is_real(val) and math.isfinite(val)):
        raise ValueError("Attribute '%s' must be finite [%s]" % (name,val))

def check_range(name,val,min,max):
    if not (_is_real(val) and min <= val <= max):
        raise ValueError("Attribute '%s' must be between %s-%s [%s]" %
                                        (name,min,max,val))

def check_open_range(name,val,min,max):
    if not (_is_real(val) and min < val < max):
        raise ValueError("Attribute '%s' must be strictly between %s-%s [%s]" %
                                        (name,min,max,val))

def check_positive(name,val):
    if not (_is_real(val) and math.isfinite(val) and val > 0):
        raise ValueError("Attribute '%s' must be positive [%s]" % (name,val))

def check_nonnegative(name,val):
    if not (_is_real(val) and math.isfinite(val) and val >= 0):
        raise ValueError("Attribute '%s' must be non-negative [%s]" % (name,val))

def check_int_range(name,val,min,max):
    ok = isinstance(val,numbers.Integral) and not isinstance(val,bool)
    if ok and min is not None and val < min:
        ok = False
    if ok and max is not None and val > max:
        ok = False
    if not ok:
        if max is None:
            raise ValueError("Attribute '%s' must be integer >= %d [%s]" %
                                        (name,min,val))
        raise ValueError("Attribute '%s' must be integer between %d-%d [%s]" %
                                        (name,min,max,val))

if __name__ == '__main__':
    import doctest,sys
    sys.exit(0 if doctest.testmod(optionflags=doctest.ELLIPSIS).failed == 0 else 1)
