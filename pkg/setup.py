from setuptools import setup, find_packages

setup(
    name="finite_localization",
    version="0.1.0",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    install_requires=["python-dotenv", "numpy", "lark"],
    include_package_data=True,  # ship dsl/examples/*.fl
    package_data={"finite_localization.dsl": ["examples/*.fl"]},
    entry_points={"console_scripts": ["finloc=finite_localization.cli:main"]},
    description="Localizations of finite categories",
)
