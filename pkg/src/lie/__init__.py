"""Matrix Lie group kernels: bases, brackets, coadjoint actions,
algebra metrics and the Cayley retraction with its differentials.
"""
