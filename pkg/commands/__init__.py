# Command package initialization
from commands import slope, table, verify

COMMANDS = (slope, table, verify)
