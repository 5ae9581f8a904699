# Simple util to archive oracle reports for the enumerable dimensions

import json

from qinv.oracle import verify_form_lemmas
from qinv.quadform import standard_form

for genus in (1, 2):
    report = verify_form_lemmas(standard_form(genus), workers=4)
    file_path = f"oracle_dim{2 * genus}.json"
    with open(file_path, "w") as fd:
        json.dump(report.as_dict(), fd, indent=2)
    print(f"{file_path}: {len(report.violations)} violations")
