import setuptools

setuptools.setup(
    name="k3b-lattice-utils",
    version="0.1",
    author="Andrew Szot",
    author_email="andrewszot32@gmail.com",
    description="Exact lattice computations for Brauer classes on K3 surfaces.",
    install_requires=[
        "numpy>=1.16.1",
        "omegaconf>=2.0.0",
        "pandas",
        "sympy>=1.7",
    ],
    entry_points={"console_scripts": ["k3b=k3b.launcher.run_cli:main"]},
    packages=setuptools.find_packages(exclude=["tests"]),
)
