from setuptools import setup, find_packages

setup(
    name="evoalg",
    version="0.1.0",
    description="Evolution algebras over exact fields: basic ideals, isomorphism and the classification of four-dimensional perfect non-simple algebras",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={
        "evoalg": [
            "report_schema.json",
            "corpus/errata.txt",
            "corpus/*/*",
        ],
    },
    install_requires=[
        "sympy>=1.11",
        "networkx>=2.6",
        "click>=8.0",
        "python-dotenv>=0.19",
        "jsonschema>=4.0",
    ],
    extras_require={
        "tests": [
            "pytest>=7.0",
            "hypothesis>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "evoalg=evoalg.cli:main",
        ],
    },
    python_requires=">=3.9",
)
