"""High-precision literals, rounded once to double."""

PI = float("3.14159265358979323846264338327950288")
SQRT_PI = float("1.77245385090551602729816748334114518")  # Gamma(1/2)
EULER_GAMMA = float("0.577215664901532860606512090082402431")
ZETA2 = float("1.64493406684822643647241516664602519")  # pi^2 / 6
SQRT_ZETA2 = float("1.28254983016118643179488525000212034")
