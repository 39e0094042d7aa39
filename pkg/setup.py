from setuptools import setup, find_packages


def read_requirements(path):
    return [line.strip() for line in open(path).readlines() if line.strip() and not line.startswith("#")]


setup(
    name="qva",
    version="0.1.0",
    packages=find_packages(exclude=["examples", "examples.*"]),
    py_modules=["config"],
    install_requires=read_requirements("requirements.txt"),
    extras_require={"test": read_requirements("requirements-dev.txt")},
    entry_points={"console_scripts": ["qva=src.cli:main"]},
    description="Exact verification engine for the vacuum module of A(h) and graded A~(g)-modules",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.8",
)
