import setuptools

setuptools.setup(
    name='qdentropy',
    version='0.1',
    license='MIT',
    description='Entropy estimation via kernel quantile density estimates, spacing estimators '
                'and an entropy-based test of normality',
    keywords=['entropy', 'quantile density', 'kernel smoothing', 'normality test'],
    packages=setuptools.find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.8',
    classifiers=[
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    install_requires=[
        'numpy',
        'scipy>=1.6',
        'tqdm',
        'matplotlib',
        'pandas',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': ['qdentropy=qdentropy.cli:main'],
    },
)
