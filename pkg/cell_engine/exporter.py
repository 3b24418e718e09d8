"""
Exporter module for the affine cell engine.
Writes JSON reports, JSON-lines ball dumps, CSV tables and SVG documents to an
output directory and records every written file in export_manifest.json.
"""

import os
import json
import logging

import pandas as pd

import config

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger('exporter')


class Exporter:
    """Collects the files written by one command run."""

    def __init__(self, out_dir=None):
        self.out_dir = out_dir or config.EXPORT_DIR
        os.makedirs(self.out_dir, exist_ok=True)
        self.files = []

    def _path(self, filename):
        path = os.path.join(self.out_dir, filename)
        self.files.append(filename)
        return path

    def write_json(self, filename, payload):
        path = self._path(filename)
        with open(path, "w") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info(f"Wrote {path}")
        return path

    def write_jsonl(self, filename, records):
        path = self._path(filename)
        count = 0
        with open(path, "w") as f:
            for record in records:
                f.write(json.dumps(record, sort_keys=True) + "\n")
                count += 1
        logger.info(f"Wrote {count} records to {path}")
        return path

    def write_csv(self, filename, rows, columns=None):
        """Write rows (list of dicts or a DataFrame) without the index column."""
        path = self._path(filename)
        df = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(rows, columns=columns)
        df.to_csv(path, index=False)
        logger.info(f"Exported {len(df)} rows to {path}")
        return path

    def write_text(self, filename, text):
        path = self._path(filename)
        with open(path, "w") as f:
            f.write(text)
        logger.info(f"Wrote {path}")
        return path

    def write_manifest(self, command, settings):
        """
        Record the command, its settings and the written files.

        Args:
            command (str): Subcommand, e.g. "cells compute"
            settings (dict): Effective configuration of the run

        Returns:
            dict: The manifest
        """
        manifest = {
            "command": command,
            "convention": config.CONVENTION,
            "settings": settings,
            "files": sorted(self.files),
        }
        path = os.path.join(self.out_dir, "export_manifest.json")
        with open(path, "w") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")
        logger.info(f"Export completed. Manifest saved to {path}")
        return manifest


def kl_rows(table):
    """KL table rows as dicts for CSV export; coefficients joined by spaces."""
    return [
        {"x": x_key, "y": y_key, "coefficients": " ".join(str(c) for c in coeffs)}
        for x_key, y_key, coeffs in table.rows()
    ]


def ball_summary(group, elements):
    """Element counts per length next to the Poincaré-series prediction."""
    counts = {}
    for g in elements:
        counts[g.length] = counts.get(g.length, 0) + 1
    rows = []
    for k in sorted(counts):
        predicted = group.predicted_ball_size(k) - (group.predicted_ball_size(k - 1) if k > 0 else 0)
        rows.append({"length": k, "elements": counts[k], "predicted": predicted})
    return rows
