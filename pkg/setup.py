import os
from distutils.core import setup

from setuptools import find_packages

# List of runtime dependencies required by this built package
install_requires = ["numpy", "flask"]

# read the contents of README file
this_directory = os.path.abspath(os.path.dirname(__file__))
with open(os.path.join(this_directory, "README.md")) as f:
    long_description = f.read()

setup(
    name="lsatreason",
    version="0.1.0",
    description="Symbolic solvers and evaluation harness for LSAT-style reasoning questions.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests"]),
    license="MIT",
    python_requires=">=3.9",
    install_requires=install_requires,
    extras_require={"tests": ["hypothesis"]},
    test_suite='tests',
    package_data={
        'lsatreason': ['templates/*.html', 'data/*.conf', 'data/*.jsonl'],
        'lsatreason.interpret': ['data/*.lex'],
    },
    entry_points={
        'console_scripts': [
            'lsatreason=lsatreason.cli:main',
            'lsatreason-dash=lsatreason.dash:main',
        ],
    },
)
