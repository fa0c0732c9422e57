from setuptools import setup

with open('README.md', encoding='utf-8') as file:
    long_description = file.read()

setup(
    name='clerical',
    version='0.4.0',
    packages=['clerical', 'clerical.syntax', 'clerical.parser', 'clerical.typechecker', 'clerical.numerics',
              'clerical.evaluator', 'clerical.oracle', 'clerical.corpus'],
    package_data={'clerical.corpus': ['*.cl']},
    license='MIT',
    description='An interpreter for Clerical, an imperative language for exact real number computation.',
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Intended Audience :: Science/Research',
        'Development Status :: 4 - Beta',
        'Natural Language :: English',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Interpreters',
    ],
    python_requires='>=3.10',
    install_requires=[],
    extras_require={'orjson': ['orjson'],
                    'docs': ['sphinx', 'sphinx_rtd_theme'],
                    'all': ['orjson']},
    entry_points={'console_scripts': ['clerical = clerical.cli:main']},
    keywords='exact real arithmetic interval interpreter nondeterminism powerdomain semantics',
)
