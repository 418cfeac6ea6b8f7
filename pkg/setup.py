#!/usr/bin/env python

# To make a release:
#
# (Make sure you have updated version and changelog in __init__.py)
#
# ./run_tests.sh
# python3 setup.py readme
# git commit -am ...
# git tag -a <version> -m <message>
# git push --tags
#
# rm -rf dist
# python3 setup.py sdist bdist_wheel
# twine upload dist/*

from setuptools import Command, setup

import qoctsim
long_description = qoctsim.__doc__.rstrip() + "\n"
version = qoctsim.version

class GenerateReadme(Command):
    description = "Generates README file from long_description"
    user_options = []
    def initialize_options(self): pass
    def finalize_options(self): pass
    def run(self):
        open("README","w").write(long_description)

setup(name='qoctsim',
      version = version,
      description = 'Quantum OCT simulation with electro-optically modulated photon pairs',
      long_description = long_description,
      long_description_content_type="text/markdown",
      cmdclass = {'readme' : GenerateReadme},
      packages = ['qoctsim'],
      package_dir = {'qoctsim' : 'qoctsim'},
      package_data = {'qoctsim' : ['presets/*.toml']},
      python_requires = '>=3.8',
      install_requires = ['numpy>=1.20',
                          'scipy>=1.6',
                          'tomli>=1.1; python_version<"3.11"'],
      entry_points = {'console_scripts' : ['qoct-sim=qoctsim.cli:main']},
      license = 'BSD',
      classifiers = [ "Topic :: Scientific/Engineering :: Physics",
                      "Programming Language :: Python :: 3",
                      ],
     )
