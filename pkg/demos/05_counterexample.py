"""Two programs a low observer cannot tell apart, and the key-holding
function that tells them apart once the observer may unseal."""
from sealtc.demo import counterexample_transcript

print(counterexample_transcript(), end="")
