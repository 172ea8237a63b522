from setuptools import setup, find_packages

setup(
    name='syncmodel',
    version='0.1.0',
    packages=find_packages(exclude=['tests']),
    package_dir={'syncmodel': 'syncmodel'},
    package_data={'syncmodel': ['examples/*.yml']},
    include_package_data=True,
    license='Apache',
    zip_safe=False,
    description='Kuramoto and Mean Field Spin Synchronization Package',
    python_requires='>=3.8',
    install_requires=["numpy",
                      "pandas>=1.5",
                      "scipy",
                      "pyyaml",
                      "scikit-learn"],
    extras_require={'tests': ["pytest", "hypothesis"]},
    entry_points={'console_scripts': ['syncmodel = syncmodel.cli:main']},
)
