import sys
import unittest
from pathlib import Path
# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from lib.builtinDiagrams import type_d
from src.centralizer_app import app


class CentralizerAppTest(unittest.TestCase):

    def setUp(self):
        self.client = app.test_client()

    def test_centralize_builtin(self):
        response = self.client.post('/centralize', json={'builtin': 'A:5', 'reflection': 'a1'})
        self.assertEqual(response.status_code, 200)
        payload = response.get_json()
        self.assertEqual(payload['domega']['vertices'], ['a1>a3', 'a1>a4', 'a1>a5'])
        self.assertEqual(payload['spherical'], {'types': ['A3'], 'order': 24})
        self.assertNotIn('r_words', payload)

    def test_centralize_inline_diagram(self):
        body = {'diagram': type_d(4).to_dict(), 'reflection': 'd2', 'all_words': True}
        response = self.client.post('/centralize', json=body)
        self.assertEqual(response.status_code, 200)
        payload = response.get_json()
        self.assertEqual(len(payload['domega']['vertices']), 3)
        self.assertEqual(payload['domega']['edges'], [])
        self.assertEqual(len(payload['r_words']), 6)

    def test_centralize_cycles(self):
        response = self.client.post('/centralize', json={'builtin': 'affA:3', 'reflection': 'a1'})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.get_json()['domega'], 'UNSUPPORTED-CYCLES')

    def test_centralize_bad_requests(self):
        cases = [
            {},
            {'builtin': 'A:3'},
            {'reflection': 'a1'},
            {'builtin': 'A:3', 'reflection': 'nope'},
            {'diagram': {'edges': [['a', 'b', 2]]}, 'reflection': 'a'},
        ]
        for body in cases:
            with self.subTest(body=body):
                response = self.client.post('/centralize', json=body)
                self.assertEqual(response.status_code, 400)
                self.assertIn('error', response.get_json())

    def test_blowup(self):
        response = self.client.post('/blowup', json={'builtin': 'A:4'})
        self.assertEqual(response.status_code, 200)
        self.assertEqual(
            response.get_json()['domega'],
            {'vertices': ['a1-a2-a3', 'a2-a3-a4'], 'edges': [['a1-a2-a3', 'a2-a3-a4', 3]]},
        )

    def test_blowup_needs_single_edge_tree(self):
        response = self.client.post('/blowup', json={'builtin': 'B:3'})
        self.assertEqual(response.status_code, 422)

    def test_builtin(self):
        response = self.client.get('/builtin/F4')
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.get_json()['vertices'], ['f1', 'f2', 'f3', 'f4'])

        response = self.client.get('/builtin/nope')
        self.assertEqual(response.status_code, 400)
        self.assertIn('Y555', response.get_json()['known'])

    def test_health_and_version(self):
        self.assertEqual(self.client.get('/health').get_json(), {'status': 'ok'})
        self.assertIn('version', self.client.get('/version').get_json())

    def test_cors_headers(self):
        response = self.client.get('/health')
        self.assertIn('Access-Control-Allow-Methods', response.headers)


if __name__ == "__main__":
    unittest.main()
