# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

from pathlib import Path

from setuptools import find_packages, setup

import versioningit

setup(
    name="ctslab",
    version=versioningit.get_version(),
    description="Two-component cts systems: a derivation oracle and "
                "Parikh, counter and case-scan membership recognizers.",
    author="The ctslab developers",
    long_description=Path("README.rst").read_text(),
    long_description_content_type="text/x-rst",
    license="MIT",
    keywords="formal languages grammar systems cts petri nets counter "
             "automata parikh",
    zip_safe=False,
    packages=find_packages('src'),
    package_dir={'': 'src'},
    package_data={'ctslab': ['py.typed']},
    install_requires=["lark>=1.1", "graphviz>=0.20"],
    entry_points={"console_scripts": ["ctslab=ctslab.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3 :: Only",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Programming Language :: Python :: Implementation :: CPython",
        "Programming Language :: Python :: Implementation :: PyPy",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.8",  # functools.cached_property
)
