# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled leaky integrate-and-fire stepping kernel.

Must stay bit-identical to the numpy fallback in lif.py: per element the
update is one multiply then one add (u = decay*u + current), compared with
>= against the threshold, pre-reset value recorded. The build passes
-ffp-contract=off so the compiler cannot fuse the multiply-add.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def simulate(cnp.float64_t[:, ::1] currents, double decay, double threshold, double reset):
    cdef Py_ssize_t n_neurons = currents.shape[0]
    cdef Py_ssize_t steps = currents.shape[1]
    spikes_arr = np.zeros((n_neurons, steps), dtype=np.uint8)
    pots_arr = np.empty((n_neurons, steps), dtype=np.float64)
    cdef cnp.uint8_t[:, ::1] spikes = spikes_arr
    cdef cnp.float64_t[:, ::1] pots = pots_arr
    cdef Py_ssize_t n, t
    cdef double u
    for n in range(n_neurons):
        u = 0.0
        for t in range(steps):
            u = decay * u + currents[n, t]
            pots[n, t] = u
            if u >= threshold:
                spikes[n, t] = 1
                u = reset
    return spikes_arr, pots_arr
