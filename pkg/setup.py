import setuptools


with open("readme.md", "r") as f:
    long_description = f.read()

setuptools.setup(
    name='kphi_utilities',
    version='0.1.0',
    description='Reduction of 3-CNF formulas to simplicial complexes, with van Kampen, homology and linking tools.',
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=['tests']),
    python_requires='>=3.8',
    install_requires=[
        'numpy',
        'pandas',
    ],
    extras_require={
        'test': ['pytest', 'hypothesis'],
    },
    entry_points={
        'console_scripts': ['kphi=kphi_utilities.kphi_cli:main'],
    },
    classifiers=(
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    )
)
