"""Conversions between natural units (c = hbar = 1, lengths in metres) and SI.

Everything inside the package is carried in natural units: proper times and
lengths in metres, angular frequencies, masses and accelerations in inverse
metres.  The speed of light is the only constant used for frequencies; the
electron-volt mass convenience additionally needs hbar*c.
"""

import math

from scipy import constants

C = constants.c  # m/s, exact
HBAR_C_EV_M = constants.hbar * constants.c / constants.e  # eV m

SECONDS_PER_MINUTE = 60.0


def per_metre_to_per_second(omega):
    return omega * C


def per_second_to_per_metre(omega_si):
    return omega_si / C


def metres_to_seconds(tau):
    return tau / C


def seconds_to_metres(t):
    return t * C


def acceleration_to_si(a):
    """Natural-unit acceleration a [1/m] -> SI [m/s^2]."""
    return a * C**2


def acceleration_from_si(a_si):
    return a_si / C**2


def mass_from_ev(mass_ev):
    """Rest energy in eV -> inverse Compton wavelength mc/hbar in 1/m."""
    return mass_ev / HBAR_C_EV_M


def angular_to_hz(omega_si):
    return omega_si / (2.0 * math.pi)


def angular_to_rpm(omega_si):
    return omega_si * SECONDS_PER_MINUTE / (2.0 * math.pi)


def rpm_to_angular(rpm):
    return rpm * 2.0 * math.pi / SECONDS_PER_MINUTE
