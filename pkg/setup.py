from setuptools import setup

exec(open('main/version.py').read())

setup(
    name='MVQCVerify',
    version=__version__,
    description='Biometric verification with minimum variance quadtree components',
    author='RahmanTeam',
    license='MIT',
    packages=['main'],
    scripts=['bin/MVQCVerify.py'],
    install_requires=['numpy', 'scipy', 'Pillow', 'opencv-python-headless'],
    python_requires='>=3.8',
    zip_safe=False
)
