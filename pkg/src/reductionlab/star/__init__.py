"""Deformed algebras: formal series, noncommutative rewriting, star products."""
