"""Domain services: scalars, oscillator algebra, quantum matrices, Fock and q-difference backends."""
