# Build Script for nclogic
# Creates a standalone console executable

# Install PyInstaller first:
# pip install -r requirements-dev.txt

# Run this script:
# python build.py

import os
import shutil
import PyInstaller.__main__

# Clean previous builds
if os.path.exists('build'):
    shutil.rmtree('build')
if os.path.exists('dist'):
    shutil.rmtree('dist')

PyInstaller.__main__.run([
    'main.py',
    '--name=nclogic',
    '--onefile',
    '--console',
    f'--add-data=config{os.pathsep}config',
    '--hidden-import=parsy',
    '--hidden-import=numpy',
    '--clean',
])

print("\nBuild complete! Check the 'dist' folder")
print("Run: dist/nclogic verify-all")
