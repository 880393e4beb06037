# Copyright 2026 The Casemix Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates the bundled instance and UF config files against their schemas."""

import json
import pathlib
import sys

import jsonschema


def main(data_dir):
    data = pathlib.Path(data_dir)
    pairs = [(p, "instance.schema.json") for p in (data / "princess_alexandra.json", data / "toy.json")]
    pairs += [(p, "uf_config.schema.json") for p in sorted((data / "uf").glob("*.json"))]
    failed = 0
    for path, schema_name in pairs:
        schema = json.loads((data / "schema" / schema_name).read_text())
        try:
            jsonschema.validate(json.loads(path.read_text()), schema)
            print(f"ok    {path.name}")
        except jsonschema.ValidationError as e:
            failed += 1
            print(f"FAIL  {path.name}: {e.message} at /{'/'.join(map(str, e.absolute_path))}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
