"""Worker runner and `spectra` command line.

Every component worker runs the same installed package; the component name
given to `spectra worker` selects which workflows and activities it exposes.
Without a Temporal cluster, `spectra run` executes the same activity bodies
in a local process pool.
"""
