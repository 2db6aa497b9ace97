# pylint: disable = C0111
from setuptools import find_packages, setup

with open("README.md", "r", encoding="utf-8") as f:
    DESCRIPTION = f.read()

# Required dependencies
install = ["numpy>=1.22", "scipy>=1.8", "PyYAML>=6.0", "Pillow>=9.0"]

# Optional dependencies
extras = {}

# Development dependencies - not included in "all" install
extras["dev"] = [
    "black",
    "coverage",
    "pre-commit",
    "pylint",
    "pytest",
]

extras["all"] = extras["dev"]

setup(
    name="evostab",
    version="0.1",
    author="evostab",
    description="Simulate evolving agent populations as Markov processes and measure their stability",
    long_description=DESCRIPTION,
    long_description_content_type="text/markdown",
    license="Apache 2.0: http://www.apache.org/licenses/LICENSE-2.0",
    packages=find_packages(where="src/python"),
    package_dir={"": "src/python"},
    keywords="evolutionary computation markov chain stability entropy multi-agent",
    python_requires=">=3.9",
    install_requires=install,
    extras_require=extras,
    entry_points={"console_scripts": ["evostab = evostab.cli:main"]},
    classifiers=[
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Utilities",
    ],
)
