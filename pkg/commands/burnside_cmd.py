"""
burnside: build or verify a certificate that the free Burnside group B(r, d) is nonabelian
"""

import argparse
import logging

from commands import load
from core.burnside import BurnsideCertificate, abelian_burnside, make_certificate, verify_certificate
from core.errors import InputError, InvalidGroupError
from storage import save_json, to_json
from utils.validation import validate_modulus, validate_positive
from views.report import PASS, Claim, Report, check

logger = logging.getLogger(__name__)


def run_burnside(args: argparse.Namespace) -> Report:
    report = Report("burnside")
    if args.verify:
        try:
            loaded = load(report, args.verify)
        except InvalidGroupError as e:
            logger.warning(f"⚠️ Certificate table rejected: {e}")
            report.add(check("certificate-verified", False, {"reason": str(e)}, str(e)))
            return report
        certificate = loaded.value
        if not isinstance(certificate, BurnsideCertificate):
            raise InputError(f"{args.verify} is not a certificate", args.verify)
        ok = verify_certificate(certificate)
        report.add(check(f"certificate-verified[d={certificate.d},r={certificate.r}]", ok,
                         {"order": certificate.group.order}))
        return report

    d = validate_modulus(args.d)
    r = validate_positive(args.r, "--r")
    certificate = make_certificate(d, r)
    payload = certificate.to_dict()
    payload["verified"] = verify_certificate(certificate)
    payload["abelian_quotient_of_Z^r"] = str(abelian_burnside([0] * r, d))
    if args.out:
        save_json(to_json(certificate), args.out)
        logger.info(f"✅ Certificate written to {args.out}")
    report.add(Claim(f"certificate[d={d},r={r}]", PASS, payload,
                     f"B({r}, {d}) is nonabelian, witnessed by {certificate.group.name} of order {certificate.group.order}"))
    return report


def setup_burnside_command(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser(
        "burnside",
        parents=[parent],
        help="certificate that B(r, d) is nonabelian",
        description="Emit a finite nonabelian group of exponent dividing d with r generator images, "
                    "or verify such a certificate from a JSON file.",
    )
    parser.add_argument("--d", type=int, default=None, help="exponent d (certificates need d > 2)")
    parser.add_argument("--r", type=int, default=None, help="number of free generators (r >= 2)")
    parser.add_argument("--verify", metavar="FILE", help="verify a certificate JSON file instead")
    parser.add_argument("--out", metavar="FILE", help="also write the certificate JSON to FILE")
    parser.set_defaults(handler=run_burnside)
