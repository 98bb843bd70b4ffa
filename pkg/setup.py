import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="rumor-source",
    version="0.0.1",
    description="Rumor source detection with prior suspects on regular trees",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "examples", "examples.*"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "Operating System :: OS Independent",
    ],
    include_package_data=True,
    python_requires='>=3.8',
    install_requires=[
        "flask>=2.2",
        "numpy>=1.17",
        "scipy>=1.7"
    ],
    extras_require={
        "test": [
            "pytest",
            "hypothesis",
            "networkx"
        ]
    },
    entry_points={
        "console_scripts": [
            "rumor-source=rumor_source.cli:main"
        ]
    }
)
