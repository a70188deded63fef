#!/usr/bin/env python3
"""
Set up the package
"""

# Standard imports
import importlib.util
import os

# Third party imports
from setuptools import setup, find_packages

# Find the version
version_file_path = os.path.join('quad_torsion', 'version.py')
spec = importlib.util.spec_from_file_location("version", version_file_path)
version_module = importlib.util.module_from_spec(spec)
spec.loader.exec_module(version_module)
version = version_module.__dict__

# Read the contents of the README file
with open('README.md', 'r', encoding='utf-8') as f:
    long_description = f.read()

setup(
    name="QuadTorsion",
    version=version['__version__'],
    entry_points={
        'console_scripts': [
            'QuadTorsion = quad_torsion.torsion_cli:cli'
        ],
    },
    packages=find_packages(exclude=['tests']),
    # The report schema is read at run time
    package_data={
        'quad_torsion': ['schemas/*.json']
    },
    include_package_data=True,
    python_requires='>=3.9',
    install_requires=[
        'coloredlogs',
        'gmpy2',
        'jsonschema',
        'pandas>=1.5',
        'sympy',
        'termcolor'
    ],
    extras_require={
        'test': [
            'hypothesis',
            'pytest',
            'pytest-cov'
        ],
        'docs': [
            'mkdocs'
        ]
    },
    long_description=long_description,
    # The content type of the long description. Necessary for PyPI
    long_description_content_type='text/markdown',
    # Classifiers categorize the project for users.
    classifiers=[
        # Specifies the intended audience of the project
        'Intended Audience :: Science/Research',
        # Defines the license of the project
        'License :: OSI Approved :: MIT License',
        # Specifies the supported Python versions
        'Programming Language :: Python :: 3.12',
        # Indicates the development status of the project
        'Development Status :: 3 - Alpha',
        # Specifies the topic related to the project
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
