from setuptools import setup, find_packages
from os import path


this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, "README.md"), encoding="utf-8") as f:
    long_desc = f.read()

with open(path.join(this_directory, "requirements.txt"), encoding="utf-8") as f:
    install_requires = f.read()

exec(open("congestlab/_version.py").read())

setup(
    name="congestlab",
    packages=find_packages(exclude=["tests"]),
    version=__version__,
    description="Broadcast CONGEST simulator for subgraph detection and enumeration",
    long_description=long_desc,
    long_description_content_type="text/markdown",
    install_requires=install_requires,
    entry_points={"console_scripts": ["congestlab = congestlab.cli:main"]},
    extras_require={
        "dev": ["pytest", "hypothesis", "black", "bump2version", "pre-commit", "pdoc3"],
    },
)
