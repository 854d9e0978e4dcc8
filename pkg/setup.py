#!/usr/bin/env python
"""Setup script for softsnake - Soft Robotic Snake Dynamics Simulator."""

from setuptools import setup, find_packages
from pathlib import Path

# Read the README file
this_directory = Path(__file__).parent
long_description = (this_directory / "README.md").read_text(encoding="utf-8")

# Core dependencies
core_deps = [
    "numpy>=1.22.0",
    "scipy>=1.9.0",
    "pydantic>=2.0.0",
    "PyYAML>=6.0",
    "matplotlib>=3.5.0",
    "typing-extensions>=4.0.0",
]

extras_require = {
    # Development dependencies
    "dev": [
        "pytest>=7.4.0",
        "pytest-cov>=4.1.0",
        "pytest-mock>=3.11.0",
        "black>=23.7.0",
        "isort>=5.12.0",
        "flake8>=6.1.0",
        "mypy>=1.5.0",
    ],

    # Testing dependencies
    "test": [
        "pytest>=7.4.0",
        "pytest-cov>=4.1.0",
        "pytest-mock>=3.11.0",
    ],
}

setup(
    name="softsnake",
    version="0.1.0",
    description="Spatial dynamics simulator for a three-section pneumatic soft robotic snake",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*", "docs"]),
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "Topic :: Scientific/Engineering",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Operating System :: OS Independent",
        "Typing :: Typed",
    ],
    keywords="soft robotics continuum robot snake locomotion dynamics simulation contact",
    python_requires=">=3.9",
    install_requires=core_deps,
    extras_require=extras_require,
    entry_points={
        "console_scripts": [
            "softsnake=softsnake.cli:main",
        ],
    },
    include_package_data=True,
    package_data={
        "softsnake": ["py.typed"],
    },
    zip_safe=False,
)
