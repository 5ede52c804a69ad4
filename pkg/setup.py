#!/usr/bin/env python
from setuptools import setup

setup(
    name="arrangement-moduli",
    version="0.1.0",
    description="Exact combinatorial checks on moduli of hyperplane arrangements",
    install_requires=[
        "singer-python>=5.0.12",
        "smart_open>=2.1",
        "voluptuous>=0.10.5",
        "sympy>=1.9",
        "pycddlib>=2.1,<3",
    ],
    packages=["arrangement_moduli"],
    package_data={"arrangement_moduli": ["test/*.json"]},
    include_package_data=True,
    python_requires=">=3.9",
    tests_require=["pytest"],
)
