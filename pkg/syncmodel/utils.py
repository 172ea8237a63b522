"""
Utilities needed within library
"""

import numpy as np

from numpy import linalg as la


__all__ = ['E3', 'wrap_angle', 'normalize_rows', 'e3_cross', 'random_unit_vectors', 'random_planar_angles',
           'finite_gradient', 'central_difference']

E3 = np.array([0., 0., 1.])


def wrap_angle(x):
    """
    Wrap angles into (-pi, pi]
    :param x: scalar or array of angles
    :return: wrapped angles, same shape
    """
    wrapped = np.mod(np.asarray(x, dtype=float) + np.pi, 2 * np.pi) - np.pi
    # mod maps +pi onto -pi, keep the closed end on the right
    return np.where(wrapped == -np.pi, np.pi, wrapped)


def normalize_rows(v, radius=1.):
    """
    Project each row of an (N, 3) array onto the sphere of given radius
    """
    v = np.asarray(v, dtype=float)
    return radius * v / la.norm(v, axis=-1, keepdims=True)


def e3_cross(v):
    """
    e3 x v for each row of v, without building the cross product matrix
    """
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    out[..., 0] = -v[..., 1]
    out[..., 1] = v[..., 0]
    return out


def random_unit_vectors(rng, n, radius=1.):
    """
    Uniform samples on the sphere of given radius
    :param rng: numpy Generator
    :param n: number of vectors
    :param radius: sphere radius
    :return: (n, 3) array
    """
    return normalize_rows(rng.normal(size=(n, 3)), radius)


def random_planar_angles(rng, n):
    return rng.uniform(0., 2 * np.pi, n)


def finite_gradient(x, f, eps=1e-6):
    """
    Central difference gradient of a scalar function of an array (any shape)
    :param x: evaluation point
    :param f: scalar function
    :param eps: step
    :return: array shaped like x
    """
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    xx = x.copy()
    flat, gflat = xx.reshape(-1), grad.reshape(-1)
    for d in range(flat.size):
        flat[d] += eps
        gflat[d] = f(xx)
        flat[d] -= 2 * eps
        gflat[d] -= f(xx)
        flat[d] += eps
        gflat[d] /= (2 * eps)
    return grad


def central_difference(samples, dt):
    """
    Five point central stencil derivative along axis 0 of uniformly spaced samples.
    The two samples at each end are dropped.
    :param samples: (T, ...) array
    :param dt: sample spacing
    :return: (T - 4, ...) array of derivatives at samples[2:-2]
    """
    s = np.asarray(samples, dtype=float)
    if s.shape[0] < 5:
        raise ValueError('central_difference: need at least 5 samples, got %d' % s.shape[0])
    return (s[:-4] - 8 * s[1:-3] + 8 * s[3:-1] - s[4:]) / (12 * dt)
