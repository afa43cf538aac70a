__all__ = ['core','space','correspondences','admissible','maps','embed','verify','report','reporting','cli']
__version__ = '0.1.0'
