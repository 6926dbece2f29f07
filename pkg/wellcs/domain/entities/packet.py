from pydantic import BaseModel, ConfigDict


class GaussianPacket(BaseModel):
    """Closed-form Gaussian packet parameters at time t.

    X = phi0*L/pi + P*t/M is the centre, P = (n0+1)*pi*hbar/L the momentum,
    tau = 1/(4*omega*sigma0^2) the decay time, sigma = sqrt(tau/(4*omega*(tau^2+t^2)))
    the width in quantum-number space and s = L/(2*pi*sigma) the spatial width.
    """

    model_config = ConfigDict(frozen=True)

    X: float
    P: float
    tau: float
    sigma: float
    s: float
    t: float
