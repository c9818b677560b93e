"""
kenglid -- Word-level language identification for Kannada-English text.

kenglid tags every word of code-mixed Kannada-English social media text as
kn, en, en-kn, name, location or other. Words are embedded with a frozen
pretrained transformer (or an offline trigram hash) and classified by an
LSTM head.
"""

from setuptools import setup, find_packages
from kenglid import __version__

DOCSTRING = __doc__.split("\n")

setup(
    name="kenglid",
    version=__version__,
    author="kenglid contributors",
    description=(DOCSTRING[1]),
    license="CC0",
    keywords="language identification code-mixing kannada bert lstm",
    packages=find_packages(exclude=["tests"]),
    long_description='\n'.join(DOCSTRING[3:]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "Topic :: Text Processing :: Linguistic",
        "License :: CC0 1.0 Universal (CC0 1.0) Public Domain Dedication",
    ],
    python_requires='>=3.8',
    install_requires=[
        'numpy',
        'torch>=1.13',
        'transformers',
        'scikit-learn',
        'matplotlib>=3.4',
        'buffering_smtp_handler',
        'ruamel.yaml'
    ],
    setup_requires=['pytest-runner'],
    tests_require=['pytest'],
    entry_points={
        'console_scripts': [
            'kenglid = kenglid.console:do_command',
        ]
    }
)
