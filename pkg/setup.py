import io
import os

from setuptools import find_packages, setup

VERSION = "0.1.0"
BASE_DIR = os.path.abspath(os.path.dirname(__file__))

with io.open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="surface-qinv",
    description=(
        "Mod 2 quadruple point invariant of embedded surfaces from homological data"
    ),
    long_description=long_description,
    long_description_content_type="text/markdown",
    version=VERSION,
    packages=find_packages(),
    package_data={"qinv.tests": ["fixtures/*.json"]},
    include_package_data=True,
    zip_safe=False,
    entry_points={"console_scripts": ["qinv = qinv.cli:main"]},
    install_requires=["numpy>=1.22"],
    python_requires=">=3.8",
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    tests_require=["pytest", "hypothesis"],
)
