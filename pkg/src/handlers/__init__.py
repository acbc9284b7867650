"""Command-line subcommand handlers"""
