# Keeps the tests directory on sys.path so `import helpers` works from anywhere.
