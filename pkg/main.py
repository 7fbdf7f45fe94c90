# main.py - Punto de entrada de las tablas de conjuntos derechos

import sys
from dotenv import load_dotenv

# Cargar variables de entorno (si existen)
load_dotenv()

from cli import main  # noqa: E402


if __name__ == "__main__":
    sys.exit(main())
