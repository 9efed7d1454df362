from spectral_kind.cli import main
import sys
sys.exit(main())
