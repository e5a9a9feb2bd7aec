"""atomcert: Kauffman-bracket state sums, atoms and crossing-number certificates for virtual links."""

__version__ = "0.1.0"
