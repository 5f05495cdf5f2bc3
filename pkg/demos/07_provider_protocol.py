"""Exercise the provider wire protocol against the in-process stub service.

Run from the repository root:  python3 demos/07_provider_protocol.py

The same checks run against any implementation of the protocol; point
`topicsum conformance <url>` at the reference TypeScript service in
provider-service/ (npm run build && npm start) for the cross-stack version.
"""

from topicsum.abstractive import GenerationParams
from topicsum.provider_protocol import RemoteClient, conformance_check
from topicsum.stub_provider import StubProviderService

with StubProviderService(dims=48, seed=3) as service:
    print(f"-- stub provider listening at {service.url}")

    client = RemoteClient(service.url, timeout=5.0, retries=0)
    print("\n-- /health")
    print("  ", client.health())

    print("\n-- /embed")
    dims, vectors = client.embed(["Radars are required.", "Pulses are shaped."])
    print(f"   dims={dims}, vectors={len(vectors)}, first entries {vectors[0][:3]}")

    print("\n-- /generate (n=4)")
    for text in client.generate(
        "Radars are required to limit emissions.", "Radar design", GenerationParams(n=4, seed=1)
    ):
        print("  ", text)

    print("\n-- /coref")
    print("  ", client.coref(["A method is given.", "It improves recall."]))

    print("\n-- conformance report")
    print(conformance_check(service.url, timeout=5.0, retries=0).render())
