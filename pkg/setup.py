#!/usr/bin/env python
from setuptools import setup, find_packages


dev_requires = [
    'Sphinx>=4.0',
]

tests_require = [
    'factory_boy>=3.2',
    'mock>=4.0',
    'hypothesis>=6.0',
]

install_requires = [
    'Django>=3.2',
    'djangorestframework>=3.12',
    'numpy>=1.20',
    'scipy>=1.7',
]

setup(
    name='informative-selection',
    version='0.1.0',
    author='OpenNode Team',
    author_email='info@opennodecloud.com',
    description='Simulation lab for empirical distribution functions under informative sample selection',
    long_description=open('README.rst').read(),
    package_dir={'': 'src'},
    packages=find_packages('src', exclude=["*.tests", "*.tests.*", "tests.*", "tests"]),
    install_requires=install_requires,
    python_requires='>=3.7',
    zip_safe=False,
    extras_require={
        'test': tests_require,
        'dev': dev_requires,
    },
    entry_points={
        'console_scripts': (
            'informative-selection = informative_selection.harness.cli:main',
        ),
    },
    tests_require=tests_require,
    include_package_data=True,
    classifiers=[
        'Framework :: Django',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Operating System :: OS Independent',
        'License :: OSI Approved :: MIT License',
    ],
)
