from python.commands.sections.asymptotics import register_asymptotics_commands
from python.commands.sections.bounds_table import register_bounds_table_commands
from python.commands.sections.curves import register_curve_commands
from python.commands.sections.verification import register_verification_commands

__all__ = [
    "register_bounds_table_commands",
    "register_curve_commands",
    "register_verification_commands",
    "register_asymptotics_commands",
]
