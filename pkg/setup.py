#!/usr/bin/env python3
"""
tnla: accurate linear algebra for totally nonnegative matrices
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read long description from README
readme = Path(__file__).parent / 'README.md'
long_description = readme.read_text() if readme.exists() else ''

setup(
    name='tnla',
    version='0.1.0',
    description='High relative accuracy linear algebra for totally nonnegative matrices in bidiagonal form',
    long_description=long_description,
    long_description_content_type='text/markdown',
    author='tnla developers',
    packages=find_packages(include=['tnla', 'tnla.*']),
    python_requires='>=3.9',
    install_requires=[
        'numpy>=1.24.0',
        'mpmath>=1.3.0',
    ],
    extras_require={
        'dev': [
            'pytest>=7.0.0',
            'pytest-cov>=4.0.0',
        ],
    },
    entry_points={
        'console_scripts': ['tnla=tnla.cli:main'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords='linear-algebra total-positivity bidiagonal-decomposition numerical-accuracy',
)
