import re
from pathlib import Path

from setuptools import find_packages, setup

version_raw = (Path(__file__).parent / "plumb" / "version.py").read_text()
version = re.compile(r'__version__\s=\s"(\d+\.\d+.\d)').search(version_raw).group(1)


setup(
    name="plumb-bounds",
    version=version,
    long_description=Path("README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    description="Upper bounds for basket and flat plumbing numbers of links from braids and Seifert graphs",
    packages=find_packages(exclude=["tests", "tests.*"]),
    keywords=[
        "knot theory",
        "link",
        "braid",
        "seifert surface",
        "plumbing",
        "basket",
        "spanning tree",
        "graph",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: MIT License",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Typing :: Typed",
    ],
    install_requires=["piccolo>=1.0.0", "aiosqlite", "python-dotenv", "networkx", "sympy"],
    python_requires=">=3.10",
    entry_points={"console_scripts": ["plumb=plumb.cli:run"]},
)
