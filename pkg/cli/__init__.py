# cli package — command-line front end (python -m cli <command> ...)
