#!env/bin/python

from main.cli import start_cli

start_cli()
